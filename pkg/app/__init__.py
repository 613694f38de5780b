# Python version check: 3.12+
import sys


if sys.version_info < (3, 12):
    print(
        "Warning: Unsupported Python version {ver}, please use 3.12 or newer".format(
            ver=".".join(map(str, sys.version_info))
        )
    )
