def count_upper(s):
    count = 0
    for i in range(0, len(s), 2):
        c = s[i]
        if c == 'A' or c == 'e' or c == 'I' or c == 'o' or c == 'u':
            count += 1
    return count
