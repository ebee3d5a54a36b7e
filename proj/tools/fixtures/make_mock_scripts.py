#!/usr/bin/env python3
"""Writes the scripted model answers used to record the fixture transcripts.

Each corpus bug gets a mock.script whose answers are internally consistent:
expected outputs in generated tests are what the stated intent really returns,
and patches are real edits against the buggy listing. Run from the repository
root, then regenerate transcripts with tools/regen_fixtures.sh.
"""

import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def block(tag, payload):
    return f"```{tag}\n{json.dumps(payload, indent=2)}\n```"


def rule(body, match=(), context=(), times=None, usage=(400, 120)):
    lines = ["=== rule"]
    lines += [f"match: {m}" for m in match]
    lines += [f"context: {c}" for c in context]
    if times is not None:
        lines.append(f"times: {times}")
    lines.append(f"usage: {usage[0]} {usage[1]}")
    lines.append("---")
    lines.append(body)
    return "\n".join(lines) + "\n"


def test_source(module, func, args, expected):
    return (
        "import sys\n\n"
        f"from {module} import {func}\n\n"
        f"actual = {func}({args})\n"
        f"if actual != {expected}:\n"
        f'    print(f"Expected: {expected} Actual: {{actual}}")\n'
        "    sys.exit(1)\n"
    )


def tests_answer(module, func, cases, lead):
    tests = [
        {"input": args, "expected": expected, "source": test_source(module, func, args, expected)}
        for args, expected in cases
    ]
    return lead + "\n\n" + block("tests", {"tests": tests})


def faults(path, spans, lead, request=()):
    cands = [{"kind": kind, "path": path, "start_line": a, "end_line": b, "snippet": ""} for kind, a, b in spans]
    return lead + "\n\n" + block("faults", {"candidates": cands, "request_files": list(request)})


def intent(desc, path, lines, lead):
    stmts = [{"path": path, "start_line": a, "end_line": b, "snippet": ""} for a, b in lines]
    return lead + "\n\n" + block("intent", {"description": desc, "faulty_statements": stmts})


def patch(path, edits, lead):
    payload = [
        {"path": path, "start_line": a, "end_line": b, "original": orig, "replacement": repl}
        for a, b, orig, repl in edits
    ]
    return lead + "\n\n" + block("patch", {"edits": payload})


LOCATE_FUNCTIONS = "Locate the top-3 faulty functions"
LOCATE_STATEMENTS = "If the fault does not exist in the function"
LOCATE_ALTERNATIVES = "What if the previous answers are incorrect?"
INITIAL_INTENT = "can you reason about the program intent"
ADVERSARIAL_INTENT = "What if the previous intents are incorrect?"
GENERATE_TESTS = "tests based on provided program intent."
CRITIQUE = "Are there any assertions that could be wrong?"
ADVERSARIAL_TESTS = "Modify the previous tests based on this intent"
RANK = "Rank tests based on confidence of assertion correctness."
ROOT_CAUSES = "most likely root causes of this bug-breaking program intent?"
REFINE = "Refine the patches based on the compilation and execution errors."


def standard_script(answers):
    """Rules in the order the session asks. answers holds the per-bug replies."""
    path, module, func = answers["path"], answers["module"], answers["func"]
    out = []
    out.append(rule(faults(path, answers["functions"], "The only function in the class is the likely culprit."),
                    match=[LOCATE_FUNCTIONS], usage=(600, 150)))
    out.append(rule(faults(path, answers["statements"], "Inside the function these statements are suspicious."),
                    match=[LOCATE_STATEMENTS], usage=(700, 200)))
    out.append(rule(faults(path, answers["alternatives"], "Other places worth checking."),
                    match=[LOCATE_ALTERNATIVES]))
    if "alternatives_again" in answers:
        out.append(rule(faults(path, answers["alternatives_again"], "No further distinct locations."),
                        match=["Name locations that differ"]))

    intents = answers["intents"]
    first = intents[0]
    out.append(rule(intent(first["desc"], path, first["lines"], "The tests suggest this intent."),
                    match=[INITIAL_INTENT]))
    out.append(rule(tests_answer(module, func, [(a, e[0]) for a, e in answers["cases"]], "Tests for the intent."),
                    match=[GENERATE_TESTS, "Program intent: " + first["desc"]], usage=(900, 500)))
    out.append(rule("All assertions follow the stated intent.\n\n" + block("critique", {"doubtful": []}),
                    match=[CRITIQUE]))

    # Adversarial intents, one entry per attempt, in the order they are asked.
    for it in intents[1:]:
        for attempt in it.get("attempts", [it]):
            out.append(rule(intent(attempt["desc"], path, attempt["lines"], "An alternative reading."),
                            match=[ADVERSARIAL_INTENT]))
            cases = [(a, e[attempt["column"]]) for a, e in answers["cases"]]
            out.append(rule(tests_answer(module, func, cases, "Same inputs, outputs under the new intent."),
                            match=[ADVERSARIAL_TESTS, "New intent: " + attempt["desc"]], usage=(900, 500)))

    for it in intents:
        out.append(rule("Most to least confident.\n\n" + block("ranking", {"order": answers["ranking"]}),
                        match=[RANK, "Program intent: " + it["desc"]]))
    for it in intents:
        cause = it["cause"]
        out.append(rule("The most likely root cause.\n\n" + block("root_causes", {"causes": [cause]}),
                        match=[ROOT_CAUSES, "Program intent: " + it["desc"]]))
        out.append(rule(patch(path, it["patch"], "Patch for this root cause."),
                        match=["Generate a patch to repair the bug caused by " + cause + "."], usage=(800, 250)))
        out.append(rule(patch(path, it["patch"], "The patch already follows the intent; resubmitting it."),
                        match=[REFINE], context=["caused by " + cause + "."], times=0, usage=(500, 200)))
    return "".join(out)


COUNT_UPPER = {
    "path": "src/count_upper.py",
    "module": "count_upper",
    "func": "count_upper",
    "functions": [("function", 1, 7)],
    "statements": [("other-class-statement", 3, 3), ("other-class-statement", 5, 5)],
    "alternatives": [("other-class-statement", 4, 4), ("other-class-statement", 6, 6)],
    "cases": [
        ('"UNIvERsiTy"', ("3", "3", "3")),
        ('"Apple"', ("1", "1", "2")),
        ('"bAnaNa"', ("1", "0", "0")),
        # The third intent's oracle for this input is 4 although the intent gives 3:
        # generated expectations are the model's, not ground truth.
        ('"AeioOU"', ("3", "2", "4")),
    ],
    "ranking": [1, 3, 4, 2],
    "intents": [
        {
            "desc": "Count every uppercase vowel (A, E, I, O, U) in the string s.",
            "lines": [(3, 3), (5, 5)],
            "cause": "a loop stride that skips odd indices",
            "patch": [
                (3, 3, "    for i in range(0, len(s), 2):", "    for i in range(len(s)):"),
                (5, 5, "        if c == 'A' or c == 'e' or c == 'I' or c == 'o' or c == 'u':",
                 "        if c in 'AEIOU':"),
            ],
        },
        {
            "desc": "Count the uppercase vowels (A, E, I, O, U) that sit at even indices of s.",
            "lines": [(5, 5)],
            "column": 1,
            "cause": "a wrong character comparison",
            "patch": [
                (5, 5, "        if c == 'A' or c == 'e' or c == 'I' or c == 'o' or c == 'u':",
                 "        if c == 'A' or c == 'E' or c == 'I' or c == 'O' or c == 'U':"),
            ],
        },
        {
            "desc": "Count the vowels of either case (a, e, i, o, u, A, E, I, O, U) that sit at even indices of s.",
            "lines": [(5, 5)],
            "column": 2,
            "cause": "missing case handling",
            "patch": [
                (5, 5, "        if c == 'A' or c == 'e' or c == 'I' or c == 'o' or c == 'u':",
                 "        if c in 'AEIOUaeiou':"),
            ],
        },
    ],
}

ADD_ELEMENTS = {
    "path": "src/add_elements.py",
    "module": "add_elements",
    "func": "add_elements",
    "functions": [("function", 1, 6)],
    "statements": [("other-class-statement", 4, 4), ("other-class-statement", 3, 3)],
    "alternatives": [("other-class-statement", 5, 5), ("variable-definition", 2, 2)],
    "cases": [
        ("[111, 21, 3, 4000, 5, 6, 7, 8, 9], 4", ("24", "24", "4132")),
        ("[-1, -12, -3], 3", ("-4", "-16", "-12")),
        ("[-10, 5, 7], 3", ("12", "2", "-10")),
        ("[1, 2, 3, 4, 5], 2", ("3", "3", "0")),
    ],
    "ranking": [2, 1, 3, 4],
    "intents": [
        {
            "desc": "Sum the elements among the first k of arr whose decimal form (sign included) has at most two characters.",
            "lines": [(4, 4)],
            "cause": "an inverted length comparison",
            "patch": [(4, 4, "        if len(str(arr[i])) >= 2:", "        if len(str(arr[i])) <= 2:")],
        },
        {
            "desc": "Sum the elements among the first k of arr whose absolute value is below 100.",
            "lines": [(4, 4)],
            "column": 1,
            "cause": "a length test used in place of a magnitude test",
            "patch": [(4, 4, "        if len(str(arr[i])) >= 2:", "        if abs(arr[i]) < 100:")],
        },
        {
            "desc": "Sum the elements among the first k of arr whose absolute value has at least two digits.",
            "lines": [(4, 4)],
            "column": 2,
            "cause": "counting the minus sign as a digit",
            "patch": [(4, 4, "        if len(str(arr[i])) >= 2:", "        if abs(arr[i]) >= 10:")],
        },
    ],
}

CLAMP = {
    "path": "src/clamp.py",
    "module": "clamp",
    "func": "clamp",
    "functions": [("function", 1, 2)],
    "statements": [("other-class-statement", 2, 2)],
    "alternatives": [("other-class-statement", 1, 1)],
    "alternatives_again": [("other-class-statement", 2, 2)],
    # Columns: clamp, midpoint, lower bound only, wrap-around.
    "cases": [
        ("15, 0, 10", ("10", "5", "15", "4")),
        ("-5, 0, 10", ("0", "5", "0", "6")),
        ("5, 0, 10", ("5", "5", "5", "5")),
        ("-8, -4, 4", ("-4", "0", "-4", "1")),
    ],
    "ranking": [1, 2, 3, 4],
    "intents": [
        {
            "desc": "Limit x to the closed range [lo, hi].",
            "lines": [(2, 2)],
            "cause": "a missing upper bound",
            "patch": [(2, 2, "    return max(lo, x)", "    return min(hi, x)")],
        },
        {
            "desc": "Return x when it lies in [lo, hi] and the midpoint (lo + hi) // 2 otherwise.",
            "lines": [(2, 2)],
            "column": 1,
            "cause": "returning a bound instead of the midpoint",
            "patch": [(2, 2, "    return max(lo, x)", "    return (lo + hi) // 2")],
        },
        {
            "desc": "Wrap x into [lo, hi] as lo + (x - lo) % (hi - lo + 1).",
            "lines": [(2, 2)],
            "cause": "no wrap-around arithmetic",
            "patch": [(2, 2, "    return max(lo, x)", "    return lo + (x - lo) % (hi - lo + 1)")],
            "attempts": [
                {"desc": "Raise x to at least lo and leave larger values unchanged.", "lines": [(2, 2)], "column": 2},
                {"desc": "Wrap x into [lo, hi] as lo + (x - lo) % (hi - lo + 1).", "lines": [(2, 2)], "column": 3},
            ],
        },
    ],
}


def main():
    for name, answers in (("count_upper", COUNT_UPPER), ("add_elements", ADD_ELEMENTS), ("clamp", CLAMP)):
        target = ROOT / "corpus" / name / "mock.script"
        target.write_text(standard_script(answers))
        print(f"wrote {target.relative_to(ROOT.parent)}")


if __name__ == "__main__":
    main()
