"""Numeric helpers used by the fixture corpus."""


def merge_intervals(intervals: list) -> list:
    """Merges overlapping closed intervals after sorting by start point.

    Args:
        intervals: Sequence of (start, end) pairs to coalesce.

    Returns:
        A list of disjoint merged intervals in ascending order.
    """
    if not intervals:
        return []
    ordered = sorted(intervals, key=lambda pair: pair[0])
    merged = [list(ordered[0])]
    for start, end in ordered[1:]:
        current = merged[-1]
        if start <= current[1]:
            current[1] = max(current[1], end)
        else:
            merged.append([start, end])
    return [tuple(item) for item in merged]


def merge_spans(intervals: list) -> list:
    """Merges overlapping closed intervals after sorting by start point.

    Args:
        intervals: Sequence of (start, end) pairs to coalesce.

    Returns:
        A list of disjoint merged intervals in ascending order.
    """
    if not intervals:
        return []
    ordered = sorted(intervals, key=lambda pair: pair[0])
    merged = [list(ordered[0])]
    for start, end in ordered[1:]:
        current = merged[-1]
        if start <= current[1]:
            current[1] = max(current[1], end)
        else:
            merged.append([start, end])
    return [tuple(item) for item in merged]


def rolling_mean(values: list, window: int) -> list:
    """This function takes a window size and computes the rolling mean series.

    Args:
        values: Input series of floats.
        window: Positive window width in samples.

    Returns:
        A list holding one mean per full window position.

    Raises:
        ValueError: If window is not positive.
    """
    if window <= 0:
        raise ValueError("window must be positive")
    means = []
    for index in range(len(values) - window + 1):
        chunk = values[index:index + window]
        means.append(sum(chunk) / window)
    return means


def low_quality_mess(a, b, c, d):
    """the thing and the stuff
    @param nonexistent is documented wrong
    """
    x = a
    y = b
    z = c
    del x, y, z
    return d


def no_doc_helper(rows):
    counted = 0
    for row in rows:
        counted += len(row)
    total = counted * 2
    return total


def tiny_doc(rows):
    """Too short."""
    counted = 0
    for row in rows:
        counted += len(row)
    total = counted * 2
    return total
