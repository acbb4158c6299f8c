"""Exact arithmetic on iterated-exponential bounds.

The move-count bounds in this package are towers of exponentials far
beyond any machine integer, so they are kept as expression trees over
nonnegative integers and named variables.  The node vocabulary is
addition, multiplication, powers, and the tower function

    e_0(x) = x,    e_{k+1}(x) = 2^(e_k(x)),

composition rather than multiplication.  Evaluation is exact up to a
configurable bit ceiling and returns a symbolic overflow marker beyond
it; comparison descends through iterated logarithms with interval
bounds, falling back to exact expansion only when the intervals fail
to separate, so it decides orderings between towers without ever
expanding them.

Expressions serialize to prefix notation, e.g. the move bound for
connecting two triangulations with p and q tetrahedra:

    (+ (e 6 (* 10 p)) (e 6 (* 10 q)))
"""

import re

DEFAULT_BIT_CEILING = 1 << 20


class UnboundVariable(ValueError):
    pass


# -- expression nodes -------------------------------------------------------

class TowerExpr:
    """Base class; instances are immutable and compared structurally."""

    __slots__ = ()

    def variables(self):
        out = set()
        self._collect_variables(out)
        return out

    def substitute(self, bindings):
        return _substitute(self, bindings or {})

    def __eq__(self, other):
        return (type(self) is type(other)
                and self._key() == other._key())

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return serialize(self)


class Const(TowerExpr):
    __slots__ = ('value',)

    def __init__(self, value):
        value = int(value)
        if value < 0:
            raise ValueError('bound expressions are over nonnegative integers')
        self.value = value

    def _key(self):
        return self.value

    def _collect_variables(self, out):
        pass


class Var(TowerExpr):
    __slots__ = ('name',)

    def __init__(self, name):
        if not re.fullmatch(r'[A-Za-z_][A-Za-z0-9_]*', name):
            raise ValueError('bad variable name %r' % name)
        self.name = name

    def _key(self):
        return self.name

    def _collect_variables(self, out):
        out.add(self.name)


class Add(TowerExpr):
    __slots__ = ('items',)

    def __init__(self, items):
        self.items = tuple(items)

    def _key(self):
        return self.items

    def _collect_variables(self, out):
        for item in self.items:
            item._collect_variables(out)


class Mul(TowerExpr):
    __slots__ = ('items',)

    def __init__(self, items):
        self.items = tuple(items)

    def _key(self):
        return self.items

    def _collect_variables(self, out):
        for item in self.items:
            item._collect_variables(out)


class Pow(TowerExpr):
    __slots__ = ('base', 'exponent')

    def __init__(self, base, exponent):
        self.base = base
        self.exponent = exponent

    def _key(self):
        return (self.base, self.exponent)

    def _collect_variables(self, out):
        self.base._collect_variables(out)
        self.exponent._collect_variables(out)


class Tower(TowerExpr):
    __slots__ = ('height', 'arg')

    def __init__(self, height, arg):
        height = int(height)
        if height < 0:
            raise ValueError('tower height must be nonnegative')
        self.height = height
        self.arg = arg

    def _key(self):
        return (self.height, self.arg)

    def _collect_variables(self, out):
        self.arg._collect_variables(out)


# -- smart constructors ------------------------------------------------------
#
# These apply the structural identities (dropped zeros and ones,
# flattened nesting, 2^x folded into the tower form) so that equal
# values built along different routes usually become equal trees.

def add(*items):
    flat = []
    for item in items:
        if isinstance(item, Add):
            flat.extend(item.items)
        elif isinstance(item, Const) and item.value == 0:
            continue
        else:
            flat.append(item)
    if not flat:
        return Const(0)
    if len(flat) == 1:
        return flat[0]
    return Add(flat)


def mul(*items):
    flat = []
    for item in items:
        if isinstance(item, Mul):
            flat.extend(item.items)
        elif isinstance(item, Const) and item.value == 1:
            continue
        else:
            flat.append(item)
    if any(isinstance(f, Const) and f.value == 0 for f in flat):
        return Const(0)
    if not flat:
        return Const(1)
    if len(flat) == 1:
        return flat[0]
    return Mul(flat)


def power(base, exponent):
    if isinstance(exponent, Const):
        if exponent.value == 0:
            return Const(1)
        if exponent.value == 1:
            return base
    if isinstance(base, Const):
        if base.value == 0:
            return Const(0)
        if base.value == 1:
            return Const(1)
        if base.value == 2:
            return tower(1, exponent)
    return Pow(base, exponent)


def tower(height, arg):
    if height == 0:
        return arg
    if isinstance(arg, Tower):
        return Tower(height + arg.height, arg.arg)
    return Tower(height, arg)


def _substitute(expr, bindings):
    if isinstance(expr, Const):
        return expr
    if isinstance(expr, Var):
        if expr.name in bindings:
            value = bindings[expr.name]
            return value if isinstance(value, TowerExpr) else Const(value)
        return expr
    if isinstance(expr, Add):
        return add(*(_substitute(i, bindings) for i in expr.items))
    if isinstance(expr, Mul):
        return mul(*(_substitute(i, bindings) for i in expr.items))
    if isinstance(expr, Pow):
        return power(_substitute(expr.base, bindings),
                     _substitute(expr.exponent, bindings))
    return tower(expr.height, _substitute(expr.arg, bindings))


# -- prefix notation ---------------------------------------------------------

def serialize(expr):
    if isinstance(expr, Const):
        return str(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Add):
        return '(+ %s)' % ' '.join(serialize(i) for i in expr.items)
    if isinstance(expr, Mul):
        return '(* %s)' % ' '.join(serialize(i) for i in expr.items)
    if isinstance(expr, Pow):
        return '(^ %s %s)' % (serialize(expr.base), serialize(expr.exponent))
    return '(e %d %s)' % (expr.height, serialize(expr.arg))


def parse(text):
    tokens = re.findall(r'\(|\)|[^\s()]+', text)
    if not tokens:
        raise ValueError('empty bound expression')
    pos = 0

    def next_token():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError('unexpected end of %r' % text)
        token = tokens[pos]
        pos += 1
        return token

    def read_expr():
        token = next_token()
        if token == ')':
            raise ValueError('unexpected ) in %r' % text)
        if token != '(':
            return read_atom(token)
        op = next_token()
        args = []
        while True:
            if pos >= len(tokens):
                raise ValueError('missing ) in %r' % text)
            if tokens[pos] == ')':
                next_token()
                break
            args.append(read_expr())
        if op == '+':
            if not args:
                raise ValueError('+ needs arguments')
            return add(*args)
        if op == '*':
            if not args:
                raise ValueError('* needs arguments')
            return mul(*args)
        if op == '^':
            if len(args) != 2:
                raise ValueError('^ needs exactly two arguments')
            return power(*args)
        if op == 'e':
            if len(args) != 2 or not isinstance(args[0], Const):
                raise ValueError('e needs an integer height and one argument')
            return tower(args[0].value, args[1])
        raise ValueError('unknown operator %r in %r' % (op, text))

    def read_atom(token):
        if re.fullmatch(r'\d+', token):
            return Const(int(token))
        return Var(token)

    expr = read_expr()
    if pos != len(tokens):
        raise ValueError('trailing input in %r' % text)
    return expr


# -- evaluation --------------------------------------------------------------

class Overflow:
    """Marker for a value that needs more than bit_ceiling bits,
    carrying the fully substituted expression."""

    __slots__ = ('expression', 'bit_ceiling')

    def __init__(self, expression, bit_ceiling):
        self.expression = expression
        self.bit_ceiling = bit_ceiling

    def __eq__(self, other):
        return (isinstance(other, Overflow)
                and self.expression == other.expression
                and self.bit_ceiling == other.bit_ceiling)

    def __repr__(self):
        return '<overflow beyond %d bits: %s>' % (
            self.bit_ceiling, serialize(self.expression))


_BIG = object()


def _require_bound(expr):
    free = expr.variables()
    if free:
        raise UnboundVariable('unbound variable(s): %s'
                              % ', '.join(sorted(free)))


def _eval_capped(expr, ceiling):
    """Exact value of a variable-free expression, or _BIG once it is
    certain the value needs more than `ceiling` bits."""
    if isinstance(expr, Const):
        return expr.value if expr.value.bit_length() <= ceiling else _BIG
    if isinstance(expr, Add):
        total = 0
        for item in expr.items:
            value = _eval_capped(item, ceiling)
            if value is _BIG:
                return _BIG
            total += value
        return total if total.bit_length() <= ceiling else _BIG
    if isinstance(expr, Mul):
        values = [_eval_capped(item, ceiling) for item in expr.items]
        if any(value == 0 for value in values if value is not _BIG):
            return 0
        if any(value is _BIG for value in values):
            return _BIG
        product = 1
        for value in values:
            product *= value
            if product.bit_length() > ceiling:
                return _BIG
        return product
    if isinstance(expr, Pow):
        base = _eval_capped(expr.base, ceiling)
        exponent = _eval_capped(expr.exponent, ceiling)
        if exponent == 0:
            return 1
        if base == 0:
            return 0
        if base == 1:
            return 1
        if exponent is _BIG or base is _BIG:
            return _BIG
        if (base.bit_length() - 1) * exponent > ceiling:
            return _BIG
        value = base ** exponent
        return value if value.bit_length() <= ceiling else _BIG
    if isinstance(expr, Tower):
        value = _eval_capped(expr.arg, ceiling)
        for _ in range(expr.height):
            if value is _BIG or value >= ceiling:
                return _BIG
            value = 1 << value
        return value
    raise UnboundVariable('unbound variable %s' % expr.name)


def evaluate(expr, bindings=None, bit_ceiling=DEFAULT_BIT_CEILING):
    """Exact integer value, or an Overflow marker carrying the
    substituted expression when the value exceeds the bit ceiling."""
    bound = expr.substitute(bindings)
    _require_bound(bound)
    value = _eval_capped(bound, bit_ceiling)
    if value is _BIG:
        return Overflow(bound, bit_ceiling)
    return value


# -- comparison --------------------------------------------------------------
#
# To order two values too large to expand, bound their base-2
# logarithms by expressions one tower level down and compare those:
#
#   log2(c)          in [bitlen-1, bitlen]   (exact for powers of two)
#   log2(a*b)         = log2 a + log2 b
#   log2(a+b)        <= 1 + log2 a + log2 b,  >= log2(either term)
#   log2(a^b)         = b * log2 a
#   log2(e_k(x))      = e_{k-1}(x)
#
# Each descent strips one exponential, so a few levels reduce any pair
# of tower bounds to machine-checkable integers.

def _log_bounds(expr, ceiling):
    """(lo, hi) expressions with lo <= log2(value) <= hi, for a
    variable-free expression whose value is at least 1."""
    if isinstance(expr, Const):
        bits = expr.value.bit_length()
        lo = Const(bits - 1)
        if expr.value == 1 << (bits - 1):
            return lo, lo
        return lo, Const(bits)
    if isinstance(expr, Add):
        big = [item for item in expr.items
               if _eval_capped(item, ceiling) is _BIG]
        if big:
            lo = _log_bounds(big[0], ceiling)[0]
        else:
            largest = max(_eval_capped(item, ceiling)
                          for item in expr.items)
            lo = Const(max(largest.bit_length() - 1, 0))
        his = [_log_bounds(item, ceiling)[1] for item in expr.items]
        slack = Const(len(expr.items).bit_length())
        return lo, add(slack, *his)
    if isinstance(expr, Mul):
        parts = [_log_bounds(item, ceiling) for item in expr.items]
        return (add(*(p[0] for p in parts)),
                add(*(p[1] for p in parts)))
    if isinstance(expr, Pow):
        lo, hi = _log_bounds(expr.base, ceiling)
        return mul(expr.exponent, lo), mul(expr.exponent, hi)
    if isinstance(expr, Tower):
        inner = tower(expr.height - 1, expr.arg)
        return inner, inner
    raise UnboundVariable('unbound variable %s' % expr.name)


def _order(a, b, ceiling, depth):
    va = _eval_capped(a, ceiling)
    vb = _eval_capped(b, ceiling)
    if va is not _BIG and vb is not _BIG:
        if va < vb:
            return 'less'
        if va > vb:
            return 'greater'
        return 'equal'
    if va is not _BIG:
        return 'less'
    if vb is not _BIG:
        return 'greater'
    if a == b:
        return 'equal'
    if depth > 0:
        lo_a, hi_a = _log_bounds(a, ceiling)
        lo_b, hi_b = _log_bounds(b, ceiling)
        if _order(hi_a, lo_b, ceiling, depth - 1) == 'less':
            return 'less'
        if _order(hi_b, lo_a, ceiling, depth - 1) == 'less':
            return 'greater'
    for escalated in (ceiling * 64, ceiling * 4096):
        va = _eval_capped(a, escalated)
        vb = _eval_capped(b, escalated)
        if va is not _BIG and vb is not _BIG:
            return 'less' if va < vb else 'greater' if va > vb else 'equal'
    raise ValueError('cannot separate %s and %s within the configured '
                     'ceiling' % (serialize(a), serialize(b)))


def compare(a, b, bindings=None, bit_ceiling=DEFAULT_BIT_CEILING):
    """'less', 'equal' or 'greater': the exact order of the two bound
    expressions at the given variable values."""
    a = a.substitute(bindings)
    b = b.substitute(bindings)
    _require_bound(a)
    _require_bound(b)
    return _order(a, b, bit_ceiling, depth=16)


def within(value, bound, bindings=None, bit_ceiling=DEFAULT_BIT_CEILING):
    """True when value <= bound at the given variable values."""
    return compare(value, bound, bindings, bit_ceiling) != 'greater'


# -- the catalogue ------------------------------------------------------------

_CATALOGUE_TEXT = (
    # moves connecting two triangulations, p and q tetrahedra
    ('main_bound', '(+ (e 6 (* 10 p)) (e 6 (* 10 q)))'),
    # moves to drive a subdivision containing the vertical tori around
    # the singular fibres into the 2-skeleton; also its tetrahedron count
    ('vertical_tori_moves', '(e 2 (* 400 (^ t 2)))'),
    # second subdivision in the fibred case: moves made and tetrahedra
    ('seifert_subdivision_moves', '(e 4 (* 500 (^ t 2)))'),
    ('seifert_subdivision_tets', '(e 3 (* 500 (^ t 2)))'),
    # coning a triangulated ball with s boundary triangles back to a
    # standard form
    ('ball_bound', '(* 6000000 (^ s 2) (^ 2 (* 6000000 (^ s 2))))'),
    # the surface-bundle case, fibre complexities p and q
    ('bundle_bound', '(+ (e 2 (* 400 (^ p 2))) (e 2 (* 400 (^ q 2))))'),
    # driving a normal surface of n discs into the 2-skeleton of a
    # t-tetrahedron triangulation: moves made and resulting size
    ('subdivision_moves', '(* 200 n t)'),
    ('subdivision_tets', '(* 20 (+ n t))'),
    # coordinate ceilings for enumerated surfaces
    ('vertex_coordinate_bound', '(^ 2 (* 7 t))'),
    ('fundamental_coordinate_bound', '(* 7 t (^ 2 (* 7 t)))'),
    # a maximal collection of disjoint non-parallel incompressible tori
    ('disjoint_tori', '(* 20 t)'),
    # singular fibres of a fibred piece
    ('singular_fibres', '(* 40 t)'),
    # first Betti numbers over Q and over Z/2
    ('betti_bound', '(* 6 t)'),
)


def bound_catalogue():
    """Name -> expression for every explicit bound the package uses."""
    return {name: parse(text) for name, text in _CATALOGUE_TEXT}


def catalogue_value(name, bindings=None, bit_ceiling=DEFAULT_BIT_CEILING):
    entries = bound_catalogue()
    if name not in entries:
        raise KeyError('no bound named %r' % name)
    return evaluate(entries[name], bindings, bit_ceiling)
