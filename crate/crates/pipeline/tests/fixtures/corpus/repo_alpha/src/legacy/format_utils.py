def normalize_rows(rows: list) -> int:
    """Normalizes numeric rows in place by dividing by each row maximum.

    Args:
        rows: List of mutable numeric row lists.

    Returns:
        The count of rows that were rescaled.
    """
    # kept for the old import path
    changed = 0
    for row in rows:
        peak = max(row) if row else 0
        if peak > 1:
            for position in range(len(row)):
                row[position] = row[position] / peak
            changed += 1
    return changed
