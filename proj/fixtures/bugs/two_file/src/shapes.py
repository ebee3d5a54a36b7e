from units import to_cm


def perimeter_cm(width, height, unit):
    return 2 * (to_cm(width, unit) + to_cm(height, unit))


def area_cm2(width, height, unit):
    return to_cm(width, unit) * to_cm(height, unit)
