#include "intentrepair/exec/toolchain.hpp"

#include <set>

#include "intentrepair/error.hpp"
#include "intentrepair/util/text.hpp"

namespace intentrepair::exec {

namespace {

const std::set<std::string>& declared_placeholders() {
    static const std::set<std::string> names{"workdir", "test_path", "test_name"};
    return names;
}

std::vector<std::string> placeholders_in(const std::string& templ) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while ((i = templ.find('{', i)) != std::string::npos) {
        const auto close = templ.find('}', i);
        if (close == std::string::npos) break;
        out.push_back(templ.substr(i + 1, close - i - 1));
        i = close + 1;
    }
    return out;
}

}  // namespace

ToolchainProfile ToolchainProfile::load(const std::string& path) { return parse(text::read_file(path)); }

ToolchainProfile ToolchainProfile::parse(const std::string& content) {
    ToolchainProfile p;
    for (const auto& raw : text::split_lines(content)) {
        const auto line = text::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::InvalidConfiguration, "toolchain profile: expected 'key = value', got '" + line + "'");
        const auto key = text::trim(line.substr(0, eq));
        const auto value = text::trim(line.substr(eq + 1));
        if (key == "name") {
            p.name = value;
        } else if (key == "compile_command") {
            p.compile_command = value;
        } else if (key == "test_compile_command") {
            p.test_compile_command = value;
        } else if (key == "test_command") {
            p.test_command = value;
        } else if (key == "test_extension") {
            p.test_extension = value;
        } else if (key == "timeout_seconds") {
            p.timeout_seconds = std::stod(value);
        } else if (key == "env_allowlist") {
            p.env_allowlist.clear();
            std::size_t start = 0;
            while (start <= value.size()) {
                auto comma = value.find(',', start);
                if (comma == std::string::npos) comma = value.size();
                auto name = text::trim(value.substr(start, comma - start));
                if (!name.empty()) p.env_allowlist.push_back(name);
                start = comma + 1;
            }
        } else {
            throw Error(ErrorKind::InvalidConfiguration, "toolchain profile: unknown key '" + key + "'");
        }
    }
    p.validate();
    return p;
}

void ToolchainProfile::validate() const {
    if (timeout_seconds <= 0) throw Error(ErrorKind::InvalidConfiguration, "toolchain timeout must be positive");
    if (test_command.empty()) throw Error(ErrorKind::InvalidConfiguration, "toolchain profile needs a test_command");
    for (const auto* templ : {&compile_command, &test_compile_command, &test_command}) {
        for (const auto& name : placeholders_in(*templ)) {
            if (!declared_placeholders().count(name))
                throw Error(ErrorKind::InvalidConfiguration, "undeclared placeholder {" + name + "} in '" + *templ + "'");
        }
    }
    for (const auto& name : placeholders_in(compile_command)) {
        if (name != "workdir")
            throw Error(ErrorKind::InvalidConfiguration, "compile_command may only use {workdir}, found {" + name + "}");
    }
}

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out.push_back(c);
        }
    }
    out.push_back('\'');
    return out;
}

std::string render_command(const std::string& templ, const std::map<std::string, std::string>& values) {
    std::string out;
    std::size_t i = 0;
    while (i < templ.size()) {
        const auto open = templ.find('{', i);
        if (open == std::string::npos) {
            out.append(templ, i, std::string::npos);
            break;
        }
        const auto close = templ.find('}', open);
        if (close == std::string::npos) {
            out.append(templ, i, std::string::npos);
            break;
        }
        out.append(templ, i, open - i);
        const auto name = templ.substr(open + 1, close - open - 1);
        auto it = values.find(name);
        if (it == values.end()) throw Error(ErrorKind::InvalidConfiguration, "no value for placeholder {" + name + "}");
        out += shell_quote(it->second);
        i = close + 1;
    }
    return out;
}

}  // namespace intentrepair::exec
