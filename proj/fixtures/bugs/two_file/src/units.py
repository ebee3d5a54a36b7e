FACTORS = {"mm": 10, "cm": 1, "m": 100}


def to_cm(value, unit):
    return value * FACTORS[unit]
