def add_elements(arr, k):
    result = 0
    for i in range(k):
        if len(str(arr[i])) >= 2:
            result += arr[i]
    return result
