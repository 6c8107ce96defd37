def build_fixture_table(width, height):
    """Builds a rectangular fixture table for the parser suites."""
    table = []
    for _ in range(height):
        row = [0] * width
        table.append(row)
    return table
