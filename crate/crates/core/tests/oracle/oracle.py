"""Independent sympy oracle for the golden ideals frozen in the Rust tests.

Every golden generator list in the Rust test suite was produced by

    python3 crates/core/tests/oracle/oracle.py <section>

and pasted verbatim. The output is the reduced grevlex basis (sympy's
`groebner(..., order="grevlex")`) printed in the polynomial text grammar.
Saturation is computed by lex elimination of a Rabinowitsch variable, which
is a different route from the block-order engine it checks.
"""

import sys
from math import factorial

from sympy import Rational, groebner, symbols, Poly, expand, prod

u = symbols("u_oracle")


def fmt_term(coeff, mono, gens):
    factors = []
    for g, e in zip(gens, mono):
        if e == 0:
            continue
        factors.append(str(g) if e == 1 else f"{g}^{e}")
    c = Rational(coeff)
    mag = abs(c)
    sign = "-" if c < 0 else "+"
    if not factors:
        body = str(mag)
    elif mag == 1:
        body = "*".join(factors)
    else:
        body = str(mag) + "*" + "*".join(factors)
    return sign, body


def fmt(p, gens):
    p = Poly(p, *gens)
    if p.is_zero:
        return "0"
    out = ""
    for i, (mono, coeff) in enumerate(p.terms(order="grevlex")):
        sign, body = fmt_term(coeff, mono, gens)
        if i == 0:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f" {sign} {body}"
    return out


def reduced(gens_list, gens):
    gens_list = [g for g in gens_list if expand(g) != 0]
    if not gens_list:
        return []
    return list(groebner(gens_list, *gens, order="grevlex").exprs)


def eliminate(ideal, drop, keep):
    G = groebner(ideal, *drop, *keep, order="lex")
    return [g for g in G.exprs if not (g.free_symbols & set(drop))]


def saturate(ideal, f, gens):
    return reduced(eliminate(list(ideal) + [u * f - 1], [u], gens), gens)


def show(label, basis, gens):
    print(f"{label}: [" + ", ".join(f'"{fmt(b, gens)}"' for b in basis) + "]")


def section_profile():
    x, y, t = symbols("x y t")
    gens = (x, y, t)

    def profile(coeffs, n_max, m, label):
        # f = y + sum_{i>=1} a_i x^-i t^i, cleared by x^(N-1)
        js = {}
        for n in range(m, n_max + 1):
            f = y + sum(coeffs(i) * x ** (-i) * t ** i for i in range(1, n))
            q = expand(f * x ** (n - 1))
            jn = saturate([q, t ** n], x, gens)
            js[n] = jn
            show(f"{label} J_{n}", jn, gens)
            show(f"{label} pi_{m}(J_{n})", reduced(jn + [t ** m], gens), gens)

    profile(lambda i: 1 if i == 1 else 0, 2, 2, "y + x^-1*t")
    profile(lambda i: factorial(i), 6, 2, "factorial")
    # polynomial control f = y + x*t
    for n in range(2, 6):
        jn = saturate([y + x * t, t ** n], x, gens)
        show(f"control J_{n}", jn, gens)
        show(f"control pi_2(J_{n})", reduced(jn + [t ** 2], gens), gens)


def section_kernel():
    x, y, z, t, u_ = symbols("x y z t u")
    print("# buchberger")
    show("lex (x^2+y^2-1, x-y)", list(groebner([x**2 + y**2 - 1, x - y], x, y, order="lex").exprs), (x, y))
    print("# eliminate")
    show("elim (u*x-1, y-u) drop u", reduced(eliminate([u_ * x - 1, y - u_], [u_], [x, y]), (x, y)), (x, y))
    print("# saturate")
    show("sat (x*y, x*t) by x", saturate([x * y, x * t], x, (x, y, t)), (x, y, t))
    show("sat (t, t^2) by x", saturate([t, t**2], x, (x, t)), (x, t))
    show("sat (x + t, t^3) by x", saturate([x + t, t**3], x, (x, t)), (x, t))
    print("# pinned instances")
    for label, ideal, f, gens in pinned_instances():
        show(label, saturate(ideal, f, gens), gens)
    for label, ideal, drop, keep in pinned_eliminations():
        show(label, reduced(eliminate(ideal, drop, keep), keep), keep)


def pinned_instances():
    x, y, z, t = symbols("x y z t")
    return [
        ("sat1", [x * y, x * t], x, (x, y, t)),
        ("sat2", [x**2 * y, x * y**2], x, (x, y)),
        ("sat3", [x * (y - 1), x**2], x, (x, y)),
        ("sat4", [x**3 - x * y, y**2 * x], x, (x, y)),
        ("sat5", [x * y + t, t**2], x, (x, y, t)),
        ("sat6", [x**2 * y + x * t, t**3], x, (x, y, t)),
        ("sat7", [(x - 1) * y, (x - 1) * z], x - 1, (x, y, z)),
        ("sat8", [x * y * z, x**2 * z**2], x * z, (x, y, z)),
        ("sat9", [y**2 - x**3, x * y], x, (x, y)),
        ("sat10", [t**2, (x - 1) * t, (x - 2) * t], x - 1, (x, t)),
        ("sat11", [x**2 * y**2, x * y**3], y, (x, y)),
        ("sat12", [x * y - z * t, x * z, y * t], x, (x, y, z, t)),
    ]


def pinned_eliminations():
    x, y, z, t, u_ = symbols("x y z t u")
    return [
        ("elim1", [u_ * x - 1, y - u_], [u_], (x, y)),
        ("elim2", [x - t**2, y - t**3], [t], (x, y)),
        ("elim3", [x - t, y - t**2, z - t**3], [t], (x, y, z)),
        ("elim4", [x * u_ - y, u_**2 - 1], [u_], (x, y)),
        ("elim5", [x - u_ * y, z - u_**2], [u_], (x, y, z)),
        ("elim6", [x**2 + y**2 - 1, x - t, y - t], [x], (y, t)),
        ("elim7", [t * x - 1, t * y - 2], [t], (x, y)),
        ("elim8", [x - y * z, y - z * t], [z], (x, y, t)),
    ]


def section_chevalley():
    x, y = symbols("x y")
    gens = (x, y)
    m = [x, y]

    def power(ideal, n):
        out = [1]
        for _ in range(n):
            out = [a * b for a in out for b in ideal]
        return reduced(out, gens)

    for n in range(1, 6):
        i_n = reduced([x] + power(m, n), gens)
        show(f"(x)+m^{n}", i_n, gens)
    for n in range(1, 5):
        for k in range(1, 6):
            i_k = reduced([x] + power(m, k), gens)
            show(f"(x)+m^{k}+m^{n}", reduced(i_k + power(m, n), gens), gens)


SECTIONS = {
    "profile": section_profile,
    "kernel": section_kernel,
    "chevalley": section_chevalley,
}



def section_darboux():
    """Bilinear system  omega ^ df = f * Theta  with Theta unknown, per monic branch."""
    import itertools
    from sympy import diff, Poly as P

    x, y, z = symbols("x y z")
    xyz = (x, y, z)

    def monomials(d):
        out = []
        for a in range(d, -1, -1):
            for b in range(d - a, -1, -1):
                out.append(x**a * y**b * z ** (d - a - b))
        return out  # grevlex-descending for x > y > z

    def run(label, w, m, n):
        mons = monomials(n)
        found = []
        for k, lead in enumerate(mons):
            cs = symbols(f"c0:{len(mons)}")
            f = lead + sum(cs[j] * mons[j] for j in range(k + 1, len(mons)))
            th = []
            tsyms = []
            for comp in range(3):
                tm = monomials(m - 1)
                ts = symbols(f"th{comp}_0:{len(tm)}")
                tsyms += ts
                th.append(sum(a * b for a, b in zip(ts, tm)))
            fx, fy, fz = diff(f, x), diff(f, y), diff(f, z)
            wedge = [w[0] * fy - w[1] * fx, w[1] * fz - w[2] * fy, w[0] * fz - w[2] * fx]
            eqs = []
            for comp in range(3):
                eqs += P(expand(wedge[comp] - f * th[comp]), *xyz).coeffs()
            unknowns = list(cs[k + 1:]) + list(tsyms)
            G = groebner(eqs, *unknowns, order="grevlex")
            consistent = list(G.exprs) != [1]
            found.append((str(lead), consistent, [str(g) for g in G.exprs] if consistent else []))
        print(f"{label} n={n}: " + "; ".join(f"{l}:{'sol ' + str(g) if c else 'none'}" for l, c, g in found))

    run("(y,-x,0)", (y, -x, 0), 1, 1)
    for m in (3,):
        jw = (x**(m - 1) * z - y**m, y**(m - 1) * x - z**m, z**(m - 1) * y - x**m)
        for n in (1, 2, 3):
            run(f"jouanolou{m}", jw, m, n)


SECTIONS["darboux"] = section_darboux


def section_family():
    """Separatrix jets by undetermined coefficients, solved degree by degree.

    The graph is `z = c*w + phi(X, Y)` around `w*(a, b, c)` with
    `X = x - a*w`, `Y = y - b*w` (the z axis is used whenever omega_3 does
    not vanish at the base point). The pulled-back form is
    `(w1 + w3*phi_X) dX + (w2 + w3*phi_Y) dY`; its degree k-1 part fixes
    the degree k part of phi.
    """
    from sympy import diff, Poly as P, cancel, fraction, linsolve, Symbol

    X, Y, w = symbols("X Y w")

    def jet(omega, base, order):
        phi = 0
        for k in range(1, order + 1):
            a = symbols(f"a{k}_0:{k + 1}")
            trial = phi + sum(a[i] * X ** (k - i) * Y ** i for i in range(k + 1))
            pt = (base[0] + X, base[1] + Y, base[2] + trial)
            ws = [o.subs({x: pt[0], y: pt[1], z: pt[2]}, simultaneous=True) for o in omega]
            comps = [ws[0] + ws[2] * diff(trial, X), ws[1] + ws[2] * diff(trial, Y)]
            eqs = []
            for c in comps:
                poly = P(expand(c), X, Y)
                for (i, j), coeff in poly.terms():
                    if i + j == k - 1:
                        eqs.append(coeff)
            (sol,) = linsolve(eqs, a)
            phi = phi + sum(cancel(sol[i]) * X ** (k - i) * Y ** i for i in range(k + 1))
        return expand(phi)

    x, y, z = symbols("x y z")
    sphere = jet((x, y, z), (0, 0, 1), 5)
    print("sphere:", sphere)

    jw = (x**2 * z - y**3, y**2 * x - z**3, z**2 * y - x**3)
    d = (1, 2, 3)
    N = 4
    phi = jet(jw, tuple(w * c for c in d), N)
    profile = [0] * N
    poly = P(phi, X, Y)
    for (i, j), coeff in poly.terms():
        num, den = fraction(cancel(coeff))
        mult = 0
        while P(den, w).eval(0) == 0:
            den = cancel(den / w)
            mult += 1
        profile[i + j - 1] = max(profile[i + j - 1], mult)
    print("jouanolou3 (1,2,3) N=4 pole profile:", profile)
    for (i, j), coeff in sorted(poly.terms()):
        print(f"  X^{i} Y^{j}: {cancel(coeff)}")


SECTIONS["family"] = section_family


def in_ideal(p, basis, gens):
    if not basis:
        return expand(p) == 0
    G = groebner(basis, *gens, order="grevlex")
    return G.contains(p)


def section_adic():
    """Containments behind the adic test on the chain (x*y^i)."""
    x, y = symbols("x y")
    gens = (x, y)
    chain = {i: [x * y**i] for i in range(1, 5)}
    cand = x * y
    for n in (1, 2):
        hit = [i for i in chain if all(in_ideal(g, [cand**n], gens) for g in chain[i])]
        print(f"forward n={n}: smallest level inside (x*y)^{n} = {hit[0] if hit else None}")
    for i in chain:
        k = next(k for k in range(1, 9) if in_ideal(cand**k, chain[i], gens))
        print(f"backward level {i}: smallest k with (x*y)^k in I_{i} = {k}")


def section_embedded():
    """Levels of the pseudo-closure with embedded points at x = 1..k."""
    x, t = symbols("x t")
    gens = (x, t)
    prod_ = 1
    for k in range(1, 5):
        prod_ = prod_ * (x - k)
        show(f"level {k}", reduced([t**2, expand(prod_ * t), t ** (k + 1)], gens), gens)


def section_descent():
    """Greedy polynomial-multiple search for y + sum i! x^-i t^i, seeds y^E."""
    x, y, t = symbols("x y t")

    def negative_part(p):
        out = 0
        for term in expand(p).as_ordered_terms():
            if Poly(term * x**50, x).degree() < 50:
                out += term
        return out

    N = 6
    f = [y] + [factorial(i) * x ** (-i) for i in range(1, N)]
    for E in range(4):
        g = [y**E]
        result = None
        for i in range(1, N):
            h = expand(sum(f[j] * g[i - j] for j in range(1, i + 1)))
            neg = negative_part(h)
            bad = [term for term in expand(neg).as_ordered_terms() if Poly(term * x**50, y).degree() < 1]
            if bad:
                result = (i, bad)
                break
            g.append(expand(-neg / y))
        print(f"seed y^{E}: obstruction at order {result[0]}, terms {result[1]}")


def section_lines():
    """Contractions of (f mod t^N, t^N) to the polynomial ring in x, t."""
    x, t = symbols("x t")
    gens = (x, t)

    def closure(f, n):
        f = expand(f)
        shift = 0
        for term in f.as_ordered_terms():
            shift = max(shift, -Poly(term * x**50, x).degree() + 50)
        q = expand(f * x**shift)
        return saturate([q, t**n], x, gens)

    for f, n in [(x * t, 3), (t / x, 3), (x + t, 3), (x - 1 + t, 3), (t**2 / x**2 + x * t**3, 5)]:
        show(f"line_closure({f}, {n})", closure(f, n), gens)
    c = closure(t**2 / x**2 + x * t**3, 5)
    print("witness t^2 in closure:", in_ideal(t**2, c, gens))


SECTIONS["adic"] = section_adic
SECTIONS["embedded"] = section_embedded
SECTIONS["descent"] = section_descent
SECTIONS["lines"] = section_lines


if __name__ == "__main__":
    for name in sys.argv[1:] or SECTIONS:
        print(f"## {name}")
        SECTIONS[name]()
