"""Class labels of the binary error / non-error problem."""

ERROR = "error"
NON_ERROR = "non_error"

# fixed column order for every per-class array
CLASSES = (ERROR, NON_ERROR)


def label_of(is_error: bool) -> str:
    return ERROR if is_error else NON_ERROR
