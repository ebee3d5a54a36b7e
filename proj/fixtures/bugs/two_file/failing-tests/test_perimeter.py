import sys

from shapes import perimeter_cm

actual = perimeter_cm(10, 20, "mm")
if actual != 6.0:
    print(f"Expected: 6.0 Actual: {actual}")
    sys.exit(1)
