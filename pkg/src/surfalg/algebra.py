"""Finite-dimensional algebras attached to a weighted triangulation quiver.

Given a triangulation quiver (Q, f) with weights m and parameters c on its
g-orbits, four bound quiver algebras are supported:

* ``weighted``: the weighted surface algebra, with relations
  a f(a) = c_abar A_abar and a f(a) g(f(a)) = 0;
* ``biserial``: the biserial counterpart, with a f(a) = 0 and the two
  maximal cyclic paths at each vertex identified;
* ``string``: the quotient by all a f(a) and all maximal g-words A_a;
* ``deformed``: the socle deformation of ``weighted`` supported on border
  loops, a^2 = c_abar A_abar + b_i B_abar.

Here A_a is the g-word of length m n - 1 starting at a, and B_a = a A_g(a)
is the full cycle of length m n, which equals c_a^{-1} w_i in the socle.

Elements are stored in the monomial basis: one idempotent per vertex, the
g-words of each admissible length, and (except for ``string``) one socle
element per vertex.  Multiplication is given by a closed-form table, so
all computations are exact.
"""

from .fields import RationalField
from .linalg import det_int, dense_invert
from .quiver import border, g_structure, is_tetrahedral, skey

KINDS = ("weighted", "biserial", "string", "deformed")


class Presentation:
    """A weighted presentation: quiver, kind, field, weights, parameters.

    Args:
        quiver: a validated TriangulationQuiver.
        kind: one of ``weighted``, ``biserial``, ``string``, ``deformed``.
        field: the ground field.
        m: weights, keyed by g-orbit representative (any orbit member is
            accepted and normalized); missing orbits default to 1.
        c: nonzero parameters, keyed like m; missing orbits default to 1.
        b: border function for ``deformed``, keyed by border vertex;
            missing vertices default to 0.

    Raises:
        ValueError: for unknown kinds, non-positive weights, zero
            parameters, an orbit with m n < 3, a border function on a
            non-border vertex, or ``deformed`` on a quiver without border.
    """

    def __init__(self, quiver, kind="weighted", field=None, m=None, c=None, b=None):
        if kind not in KINDS:
            raise ValueError(f"unknown algebra kind {kind!r}")
        self.quiver = quiver
        self.kind = kind
        self.field = field if field is not None else RationalField()
        self.gd = g_structure(quiver)
        self.m = self._orbit_map(m or {}, "weight")
        self.c = self._orbit_map(c or {}, "parameter")
        for rep in self.m:
            w = self.m[rep]
            if not isinstance(w, int) or w < 1:
                raise ValueError(f"weight of orbit {rep!r} must be a positive integer")
            if self.c[rep] == self.field.zero:
                raise ValueError(f"parameter of orbit {rep!r} must be nonzero")
            if w * self.gd.n[rep] < 3:
                raise ValueError(
                    f"orbit {rep!r} has m*n = {w * self.gd.n[rep]} < 3"
                )
        self.border_vertices, self.border_loops = border(quiver)
        self.b = {}
        if b:
            if kind != "deformed":
                raise ValueError("border function requires kind 'deformed'")
            for v, val in b.items():
                if v not in self.border_loops:
                    raise ValueError(f"border function on non-border vertex {v!r}")
                self.b[v] = val
        if kind == "deformed":
            if not self.border_vertices:
                raise ValueError("kind 'deformed' requires a nonempty border")
            for v in self.border_vertices:
                self.b.setdefault(v, self.field.zero)

    def _orbit_map(self, given, what):
        out = {}
        default = 1 if what == "weight" else self.field.one
        for key, val in given.items():
            rep = self.gd.rep.get(key)
            if rep is None:
                raise ValueError(f"{what} keyed by unknown arrow {key!r}")
            if rep in out and out[rep] != val:
                raise ValueError(
                    f"conflicting {what} values for orbit of {rep!r}"
                )
            out[rep] = val
        for o in self.gd.orbits:
            out.setdefault(o[0], default)
        return out

    def weight_of(self, a):
        return self.m[self.gd.rep[a]]

    def param_of(self, a):
        return self.c[self.gd.rep[a]]


class AlgebraTable:
    """The algebra of a presentation, as a based multiplication table."""

    def __init__(self, pres):
        self.pres = pres
        self.quiver = pres.quiver
        self.gd = pres.gd
        self.field = pres.field
        self.kind = pres.kind
        q = self.quiver
        self.mn = {a: pres.weight_of(a) * self.gd.n[a] for a in q.arrows}
        self.c = {a: pres.param_of(a) for a in q.arrows}
        self.basis = []
        for v in q.vertices:
            self.basis.append(("e", v))
        top = 2 if pres.kind == "string" else 1
        words = []
        for a in q.arrows:
            for length in range(1, self.mn[a] - top + 1):
                words.append(("w", a, length))
        words.sort(key=lambda w: (skey(self.gd.rep[w[1]]), skey(w[1]), w[2]))
        self.basis.extend(words)
        if pres.kind != "string":
            for v in q.vertices:
                self.basis.append(("s", v))
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.src_of = [self._src(b) for b in self.basis]
        self.tgt_of = [self._tgt(b) for b in self.basis]
        self.by_pair = {}
        for i in range(self.dim):
            self.by_pair.setdefault((self.src_of[i], self.tgt_of[i]), []).append(i)
        self.right = {}
        self._build_right_table()
        self._bp = {}
        self._dual = None

    def _src(self, b):
        if b[0] == "w":
            return self.quiver.src[b[1]]
        return b[1]

    def _tgt(self, b):
        if b[0] == "w":
            return self.quiver.tgt[self.gd.g_power(b[1], b[2] - 1)]
        return b[1]

    def least_arrow_at(self, v):
        return self.quiver.out_arrows(v)[0]

    def word_arrows(self, a, length):
        """The arrow sequence a, g(a), ..., g^(length-1)(a)."""
        out = []
        cur = a
        for _ in range(length):
            out.append(cur)
            cur = self.gd.g[cur]
        return tuple(out)

    def _build_right_table(self):
        field = self.field
        q = self.quiver
        string = self.kind == "string"
        for i, b in enumerate(self.basis):
            if b[0] == "e":
                for a in q.out_arrows(b[1]):
                    self.right[(i, a)] = ((self.index[("w", a, 1)], field.one),)
                continue
            if b[0] == "s":
                continue
            a, length = b[1], b[2]
            last = self.gd.g_power(a, length - 1)
            gx = self.gd.g[last]
            fx = q.f[last]
            mn = self.mn[a]
            # Extension along g: the word grows, tops out, or hits the socle.
            if string:
                if length + 1 <= mn - 2:
                    self.right[(i, gx)] = ((self.index[("w", a, length + 1)], field.one),)
            else:
                if length + 1 <= mn - 1:
                    self.right[(i, gx)] = ((self.index[("w", a, length + 1)], field.one),)
                else:
                    soc = self.index[("s", q.src[a])]
                    self.right[(i, gx)] = ((soc, field.inv(self.c[a])),)
            # Extension along f: zero except from single arrows in the
            # weighted and deformed algebras.
            if length == 1 and self.kind in ("weighted", "deformed"):
                ab = q.bar[a]
                terms = [(self.index[("w", ab, self.mn[ab] - 1)], self.c[ab])]
                if self.kind == "deformed" and q.f[a] == a:
                    bb = self.pres.b.get(q.src[a], field.zero)
                    if bb != field.zero:
                        soc = self.index[("s", q.src[a])]
                        terms.append((soc, field.mul(bb, field.inv(self.c[ab]))))
                if fx == gx:
                    raise AssertionError("g- and f-extensions must differ")
                self.right[(i, fx)] = tuple(terms)

    def chain(self, j):
        """Basis element j as (scalar, arrow sequence); idempotents give ()."""
        b = self.basis[j]
        if b[0] == "e":
            return self.field.one, ()
        if b[0] == "w":
            return self.field.one, self.word_arrows(b[1], b[2])
        a = self.least_arrow_at(b[1])
        return self.c[a], self.word_arrows(a, self.mn[a])

    def basis_product(self, i, j):
        """Product of basis elements i and j, as a tuple of (index, scalar)."""
        key = (i, j)
        cached = self._bp.get(key)
        if cached is not None:
            return cached
        field = self.field
        bj = self.basis[j]
        if self.tgt_of[i] != self.src_of[j]:
            result = ()
        elif bj[0] == "e":
            result = ((i, field.one),)
        else:
            scale, arrows = self.chain(j)
            cur = {i: scale}
            for a in arrows:
                nxt = {}
                for k, cf in cur.items():
                    for k2, c2 in self.right.get((k, a), ()):
                        w = field.add(nxt.get(k2, field.zero), field.mul(cf, c2))
                        if w == field.zero:
                            nxt.pop(k2, None)
                        else:
                            nxt[k2] = w
                cur = nxt
                if not cur:
                    break
            result = tuple(sorted(cur.items()))
        self._bp[key] = result
        return result

    def multiply(self, x, y):
        """Product of two elements (dicts basis index -> scalar)."""
        field = self.field
        out = {}
        for i, xi in x.items():
            for j, yj in y.items():
                s = field.mul(xi, yj)
                for k, ck in self.basis_product(i, j):
                    w = field.add(out.get(k, field.zero), field.mul(s, ck))
                    if w == field.zero:
                        out.pop(k, None)
                    else:
                        out[k] = w
        return out

    def idempotent(self, v):
        return {self.index[("e", v)]: self.field.one}

    def arrow_element(self, a):
        return {self.index[("w", a, 1)]: self.field.one}

    def word_element(self, a, length):
        """The g-word of the given length starting at a; length 0 gives e."""
        if length == 0:
            return self.idempotent(self.quiver.src[a])
        return {self.index[("w", a, length)]: self.field.one}

    def socle_element(self, v):
        return {self.index[("s", v)]: self.field.one}

    def element_from_path(self, arrows, coeff=None):
        """Evaluate a path (sequence of composable arrows) in the algebra."""
        field = self.field
        coeff = field.one if coeff is None else coeff
        if not arrows:
            raise ValueError("empty path has no source idempotent")
        cur = {self.index[("e", self.quiver.src[arrows[0]])]: coeff}
        for a in arrows:
            nxt = {}
            for k, cf in cur.items():
                for k2, c2 in self.right.get((k, a), ()):
                    w = field.add(nxt.get(k2, field.zero), field.mul(cf, c2))
                    if w == field.zero:
                        nxt.pop(k2, None)
                    else:
                        nxt[k2] = w
            cur = nxt
            if not cur:
                break
        return cur

    def basis_of(self, source=None, target=None):
        """Indices of basis elements with the given source and/or target."""
        out = []
        for i in range(self.dim):
            if source is not None and self.src_of[i] != source:
                continue
            if target is not None and self.tgt_of[i] != target:
                continue
            out.append(i)
        return out


def build_algebra(pres):
    """Build the multiplication table of a presentation."""
    return AlgebraTable(pres)


def el_add(field, x, y):
    out = dict(x)
    for k, v in y.items():
        w = field.add(out.get(k, field.zero), v)
        if w == field.zero:
            out.pop(k, None)
        else:
            out[k] = w
    return out


def el_scale(field, s, x):
    if s == field.zero:
        return {}
    return {k: field.mul(s, v) for k, v in x.items()}


def el_sub(field, x, y):
    return el_add(field, x, el_scale(field, field.neg(field.one), y))


def defining_relations(table):
    """The defining relations of the presentation, as coefficiented paths.

    Each relation is a dict with a name and a list of (coefficient, arrow
    sequence) terms; the relation asserts that the sum vanishes.
    """
    pres = table.pres
    q = table.quiver
    field = table.field
    gd = table.gd
    rels = []
    if pres.kind in ("weighted", "deformed"):
        for a in q.arrows:
            ab = q.bar[a]
            terms = [
                (field.one, (a, q.f[a])),
                (field.neg(table.c[ab]), table.word_arrows(ab, table.mn[ab] - 1)),
            ]
            if pres.kind == "deformed" and q.f[a] == a:
                bb = pres.b.get(q.src[a], field.zero)
                if bb != field.zero:
                    terms.append(
                        (field.neg(bb), table.word_arrows(ab, table.mn[ab]))
                    )
            rels.append({"name": f"commute_{a}", "terms": terms})
            rels.append({
                "name": f"zero_{a}",
                "terms": [(field.one, (a, q.f[a], gd.g[q.f[a]]))],
            })
    elif pres.kind == "biserial":
        for v in q.vertices:
            a, ab = q.out_arrows(v)
            rels.append({
                "name": f"socle_{v}",
                "terms": [
                    (table.c[a], table.word_arrows(a, table.mn[a])),
                    (field.neg(table.c[ab]), table.word_arrows(ab, table.mn[ab])),
                ],
            })
        for a in q.arrows:
            rels.append({
                "name": f"zero_{a}",
                "terms": [(field.one, (a, q.f[a]))],
            })
    else:
        for a in q.arrows:
            rels.append({
                "name": f"zero_{a}",
                "terms": [(field.one, (a, q.f[a]))],
            })
            rels.append({
                "name": f"top_{a}",
                "terms": [(field.one, table.word_arrows(a, table.mn[a] - 1))],
            })
    return rels


def dimension_report(table):
    """Total dimension against the closed-form count, per vertex too."""
    gd = table.gd
    pres = table.pres
    formula = 0
    for o in gd.orbits:
        mo = pres.m[o[0]]
        formula += mo * len(o) * len(o)
    if pres.kind == "string":
        formula -= 3 * len(table.quiver.vertices)
    by_vertex = {}
    vertex_formula = {}
    for v in table.quiver.vertices:
        by_vertex[str(v)] = len(table.basis_of(source=v))
        out = table.quiver.out_arrows(v)
        count = sum(pres.weight_of(a) * gd.n[a] for a in out)
        if pres.kind == "string":
            count -= 3
        vertex_formula[str(v)] = count
    return {
        "dim": table.dim,
        "formula": formula,
        "matches": table.dim == formula
        and by_vertex == vertex_formula,
        "dim_at_vertex": by_vertex,
        "formula_at_vertex": vertex_formula,
    }


def cartan_matrix(table):
    """The Cartan matrix C[i][j] = dim e_i A e_j and its determinant."""
    verts = table.quiver.vertices
    mat = [[len(table.by_pair.get((u, v), ())) for v in verts] for u in verts]
    return {
        "vertices": list(verts),
        "matrix": mat,
        "det": det_int(mat),
        "convention": "entry [i][j] counts basis elements of e_i A e_j",
    }


def symmetrizing_form(table):
    """The symmetrizing form: the coefficient functional of the socle basis.

    Returns the form as a dict basis index -> scalar (supported on the
    socle elements).  Raises for ``string``, which is not self-injective.
    """
    if table.kind == "string":
        raise ValueError("string algebras carry no symmetrizing form here")
    field = table.field
    return {
        table.index[("s", v)]: field.one for v in table.quiver.vertices
    }


def form_value(table, phi, x):
    field = table.field
    out = field.zero
    for k, v in x.items():
        p = phi.get(k)
        if p is not None:
            out = field.add(out, field.mul(p, v))
    return out


def gram_matrix(table, phi):
    """The Gram matrix G[i][j] = phi(b_i b_j) of the form on the basis."""
    field = table.field
    n = table.dim
    g = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        for j in table.basis_of(source=table.tgt_of[i]):
            val = field.zero
            for k, ck in table.basis_product(i, j):
                p = phi.get(k)
                if p is not None:
                    val = field.add(val, field.mul(p, ck))
            g[i][j] = val
    return g


def verify_symmetrizing_form(table):
    """Check symmetry phi(xy) = phi(yx) on all basis pairs and nondegeneracy."""
    phi = symmetrizing_form(table)
    field = table.field
    gram = gram_matrix(table, phi)
    failure = None
    for i in range(table.dim):
        for j in range(i + 1, table.dim):
            if gram[i][j] != gram[j][i]:
                failure = {"i": list(table.basis[i]), "j": list(table.basis[j])}
                break
        if failure:
            break
    inv = dense_invert(gram, field)
    return {
        "symmetric": failure is None,
        "failing_pair": failure,
        "dim": table.dim,
        "nondegenerate": inv is not None,
    }


def dual_basis(table):
    """The dual basis b_j* with phi(b_i . b_j*) = delta_ij, as elements."""
    if table._dual is not None:
        return table._dual
    field = table.field
    phi = symmetrizing_form(table)
    gram = gram_matrix(table, phi)
    inv = dense_invert(gram, field)
    if inv is None:
        raise ValueError("symmetrizing form is degenerate")
    dual = []
    for j in range(table.dim):
        dual.append({k: inv[k][j] for k in range(table.dim)
                     if inv[k][j] != field.zero})
    table._dual = dual
    return dual


def tetrahedral_parameters(table):
    """The four parameters (a, b, c, d) of a tetrahedral algebra.

    The labeling is the canonical one found by the isomorphism witness of
    :func:`is_tetrahedral`; the product a b c d (hence singularity) does
    not depend on the choice.

    Raises:
        ValueError: when the quiver is not tetrahedral or some weight
            exceeds 1.
    """
    ok, wit = is_tetrahedral(table.quiver)
    if not ok:
        raise ValueError("quiver is not tetrahedral")
    if any(w != 1 for w in table.pres.m.values()):
        raise ValueError("tetrahedral parameters require all weights 1")
    amap = wit["arrow_map"]
    inv = {ref: a for a, ref in amap.items()}
    field = table.field
    vals = {}
    for label, ref in (("a", "beta"), ("b", "rho"), ("c", "gamma"), ("d", "alpha")):
        vals[label] = table.c[inv[ref]]
    product = field.one
    for label in "abcd":
        product = field.mul(product, vals[label])
    return {
        "a": vals["a"], "b": vals["b"], "c": vals["c"], "d": vals["d"],
        "product": product,
        "singular": product == field.one,
        "arrow_map": amap,
    }


def tetrahedral_scaling(table1, table2):
    """Arrow scaling factors for the tetrahedral parameter-reduction map.

    For a tetrahedral algebra with parameters (a, b, c, d) and its
    companion with parameters (abcd, 1, 1, 1) on the same labeled quiver,
    the map fixing three arrow scalings per parameter sends one set of
    relations to the other.  Returns a dict arrow id -> scalar t such that
    arrow x maps to t x.
    """
    q1, q2 = table1.quiver, table2.quiver
    same = (q1.vertices == q2.vertices and q1.arrows == q2.arrows
            and q1.src == q2.src and q1.tgt == q2.tgt and q1.f == q2.f)
    if not same:
        raise ValueError("the two algebras must share one labeled quiver")
    params = tetrahedral_parameters(table1)
    field = table1.field
    a, b, c, d = params["a"], params["b"], params["c"], params["d"]
    bcd = field.mul(field.mul(b, c), d)
    inv = {ref: x for x, ref in params["arrow_map"].items()}
    scale = {x: field.one for x in q1.arrows}
    scale[inv["alpha"]] = d
    scale[inv["mu"]] = b
    scale[inv["nu"]] = c
    for ref in ("delta", "omega", "sigma"):
        scale[inv[ref]] = bcd
    return scale


def scaling_isomorphism_check(table1, table2, scale=None):
    """Verify the arrow-scaling map table2 -> table1 is an algebra isomorphism.

    Multiplicativity is checked on every pair of basis elements; linearity
    and bijectivity are immediate because each basis element maps to a
    nonzero multiple of itself.

    Args:
        table1: tetrahedral algebra with parameters (a, b, c, d).
        table2: algebra on the same labeled quiver, expected parameters
            (abcd, 1, 1, 1).
        scale: optional replacement scaling (dict arrow -> scalar); by
            default :func:`tetrahedral_scaling` is used.

    Returns:
        (ok, report) where report carries the scaling and any failing pair.
    """
    if scale is None:
        scale = tetrahedral_scaling(table1, table2)
    field = table1.field
    images = []
    for j in range(table2.dim):
        s0, arrows = table2.chain(j)
        t = s0
        for x in arrows:
            t = field.mul(t, scale[x])
        bj = table2.basis[j]
        if bj[0] == "e":
            img = table1.idempotent(bj[1])
        else:
            img = table1.element_from_path(arrows, t)
        images.append(img)
        if not img:
            return False, {"scale": scale, "failure": {"basis": list(bj)}}
    failure = None
    for i in range(table2.dim):
        for j in range(table2.dim):
            lhs = {}
            for k, ck in table2.basis_product(i, j):
                for kk, cc in images[k].items():
                    w = field.add(lhs.get(kk, field.zero), field.mul(ck, cc))
                    if w == field.zero:
                        lhs.pop(kk, None)
                    else:
                        lhs[kk] = w
            rhs = table1.multiply(images[i], images[j])
            if lhs != rhs:
                failure = {"i": list(table2.basis[i]), "j": list(table2.basis[j])}
                break
        if failure:
            break
    return failure is None, {"scale": scale, "failure": failure}
