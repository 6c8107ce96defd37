def c01_straight(x):
    a = x + 1
    b = a * 2
    return b


def c02_one_if(x):
    if x > 0:
        return 1
    return 0


def c03_if_else(x):
    if x > 0:
        return 1
    else:
        return 0


def c04_if_elif_else(x):
    if x > 10:
        return 2
    elif x > 0:
        return 1
    else:
        return 0


def c05_for(xs):
    total = 0
    for x in xs:
        total += x
    return total


def c06_while(x):
    while x > 0:
        x -= 1
    return x


def c07_for_with_if(xs):
    total = 0
    for x in xs:
        if x > 0:
            total += x
    return total


def c08_try_except(x):
    try:
        return 10 // x
    except ZeroDivisionError:
        return 0


def c09_two_excepts(x):
    try:
        return int(x)
    except ValueError:
        return -1
    except TypeError:
        return -2


def c10_ternary(x):
    return 1 if x > 0 else 0


def c11_and(a, b):
    return a and b


def c12_or(a, b):
    return a or b


def c13_and_or(a, b, c):
    return a and b or c


def c14_comprehension(xs):
    return [x * 2 for x in xs if x > 0]


def c15_match_two_cases(x):
    match x:
        case 1:
            return "one"
        case 2:
            return "two"
    return "many"


def c16_nested_for(grid):
    total = 0
    for row in grid:
        for cell in row:
            total += cell
    return total


def c17_if_with_and(a, b):
    if a > 0 and b > 0:
        return a + b
    return 0


def c18_while_with_break(xs):
    while True:
        if not xs:
            break
        xs = xs[1:]
    return xs


def c19_two_ifs(x):
    if x > 100:
        x -= 100
    if x > 10:
        x -= 10
    return x


def c20_mixed(xs):
    try:
        out = []
        for x in xs:
            if x is None:
                continue
            out.append(1 if x > 0 else -1)
        return out
    except TypeError:
        return []
