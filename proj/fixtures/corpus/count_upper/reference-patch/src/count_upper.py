def count_upper(s):
    count = 0
    for i in range(0, len(s), 2):
        c = s[i]
        if c == 'A' or c == 'E' or c == 'I' or c == 'O' or c == 'U':
            count += 1
    return count
