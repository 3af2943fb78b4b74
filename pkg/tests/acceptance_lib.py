"""The thirteen acceptance criteria as functions returning (ok, detail).

Printed values below are transcribed from the source tables; derived
values were computed by an independent route (sympy or a hand check)
and frozen here.
"""

from __future__ import annotations

import time
from fractions import Fraction

from k3v import k3pipeline, lattice, rdpcheck, weierstrass
from k3v.exact.ff import conway_like, prime_field
from k3v.exact.mpoly import parse
from k3v.exact.poly import Poly

RUNTIME = {1: 1, 2: 1, 3: 1, 4: 10, 5: 5, 6: 5, 7: 10, 8: 30, 9: 60, 10: 10, 11: 1, 12: 5, 13: 120}

# Criteria whose printed data disagree with the exact computation.
KNOWN_CONFLICTS = {
    6: "the printed Y1 and Y2 satisfy Y1 + Y2 = -i F C, so Y1 - Y2 = FC fails as printed",
    8: "X_{3,2} at (x',y',s) = (0,1,0) computes as I3* (D7); the table prints D4",
    9: "the p = 2 quartic has two further A1 points at (1:1:0:0) and (0:0:1:1) besides the four A3",
}

F_PRINTED = [1, -4, 2, 0, -3, 4, -5, 1, 1, -2, 2, -3, 2, -2, 1, 1, -5, 4, -3, 0, 2, -4, 1]


def _by_name(checks):
    return {c.name: c for c in checks}


def _table():
    return k3pipeline.LineTable.load(k3pipeline.reconstructed_table_path())


# -- 1..3: the charpoly pipeline ------------------------------------------------------

def criterion_1():
    checks, rep = k3pipeline.run_charpoly_pipeline()
    c = _by_name(checks)["charpoly_equals_F"]
    coeffs = [int(x) for x in rep.input.c]
    ok = c.status == "PASS" and coeffs == F_PRINTED
    return ok, f"charpoly(R^5 T2 T1 T2) coefficients == printed F: {coeffs == F_PRINTED}"


def criterion_2():
    _, rep = k3pipeline.run_charpoly_pipeline()
    irr = rep.irreducible
    ok = (irr.verdict == "yes" and irr.certificate == "modular-degree-sets" and set(irr.primes) <= {2, 3}
          and rep.residual_is_salem and rep.salem_trace_roots == {"above_2": 1, "inside": 10})
    return ok, (f"irreducible via {irr.certificate} mod {list(irr.primes)}; trace roots "
                f"{rep.salem_trace_roots['above_2']} in (2,inf), {rep.salem_trace_roots['inside']} in (-2,2)")


def criterion_3():
    checks, _ = k3pipeline.run_charpoly_pipeline()
    c = _by_name(checks)
    names = ["Mg_isometry_B3", "eigenrank_T1_plus1", "eigenrank_T2_plus1"]
    ok = all(c[n].status == "PASS" for n in names)
    return ok, (f"isometry {c['Mg_isometry_B3'].status}; eigenrank(T1,+1) = {c['eigenrank_T1_plus1'].details['eigenrank']}"
                f"; eigenrank(T2,+1) = {c['eigenrank_T2_plus1'].details['eigenrank']}")


# -- 4: lines on the Fermat quartic -------------------------------------------------

def criterion_4():
    c = _by_name(k3pipeline.run_line_checks())
    names = ["fermat_lines_112", "line_gram_rank_22", "rank22_minor_det_9", "line_lattice_discriminant_9"]
    ok = all(c[n].status == "PASS" for n in names)
    return ok, (f"{c['fermat_lines_112'].details['count']} lines; rank {c['line_gram_rank_22'].details['rank']};"
                f" minor det {c['rank22_minor_det_9'].details['det']}; SNF disc {c['line_lattice_discriminant_9'].details['abs_disc']}")


# -- 5: exceptional sets of the two double covers ----------------------------------------

def criterion_5():
    c = _by_name(k3pipeline.run_geometry_crosschecks(_table()))
    names = ["line_table_valid", "D_squares_2", "D_nef_on_lines", "pi1_exceptional_sets", "pi2_exceptional_sets"]
    ok = all(c[n].status == "PASS" for n in names)
    return ok, "; ".join(f"{n} {c[n].status}" for n in names[1:])


# -- 6: the sextic audit --------------------------------------------------------------

def criterion_6():
    c = _by_name(k3pipeline.run_sextic_audit(None))
    names = ["sextic_interpolation_unique", "sextic_singular_census", "pi2_Y1_minus_Y2_is_FC", "pi2_branch_identity"]
    ok = all(c[n].status == "PASS" for n in names)
    census = c["sextic_singular_census"].details
    return ok, (f"interpolation dim {c['sextic_interpolation_unique'].details['dimension']}; "
                f"{census['cusps']} cusps + {census['nodes']} nodes; Y1-Y2=FC {c['pi2_Y1_minus_Y2_is_FC'].status}"
                f" (Y1+Y2 = {c['pi2_Y1_plus_Y2_diagnostic'].details['Y1 + Y2 = lambda F C']} FC);"
                f" Y1Y2 = branch mod F {c['pi2_branch_identity'].status}")


# -- 7: lines on X_K ----------------------------------------------------------------------

def criterion_7():
    c = _by_name(k3pipeline.verify_lines_on_XK())
    ok = all(x.status == "PASS" for x in c.values())
    st = c["specialization_criterion_d40"].details
    return ok, (f"{c['l1_count_40'].details['count']} + {c['l2_on_XK'].details['count']} + 2 = "
                f"{c['XK_line_count_52'].details['count']}; d'^40 = -1 lines matched over F_81: {st['minus1_in_u_enumeration']}")


# -- 8: Tate tables ------------------------------------------------------------------------

L_E = {5: 5, 3: 9, 2: 8}
XP_T0 = {3: "E8", 5: "E7", 7: "E7", 11: "A2", 13: None, 17: "A2", 19: None}
XP_INF = {3: None, 5: "E8", 7: "E6", 11: "E7", 13: "E7", 17: "A1", 19: "A1"}


def _lin(p, c):
    F = prime_field(p)
    return weierstrass.place_label(Poly([F(-c), F(1)]))


def printed_tate_entries():
    """[(model name, model, place, dynkin or None, point or None)] as printed; None dynkin is '---'."""
    out = []
    for l in (2, 3, 5, 7, 11):
        for p in (2, 3, 5, 7, 11):
            m = weierstrass.x_lp_model(l, p)
            mp = m.reduce()
            tag = f"X_{{{l},{p}}}"
            out.append((tag + "/Q", m, "t", None, None))
            out.append((tag + f"/F{p}", mp, "t", f"A{l - 1}", ("0", "0")))
            if l in L_E:
                out.append((tag + "/Q", m, "t - 1", None, None))
                out.append((tag + f"/F{p}", mp, _lin(p, 1), f"A{L_E[l] - 1}" if p == l else None, ("0", "0")))
            if l == 7:
                out.append((tag + "/Q", m, "inf", "E8", ("0", "0")))
                out.append((tag + f"/F{p}", mp, "inf", "E8", ("0", "0")))
            if l in (5, 2):
                out.append((tag + "/Q", m, "inf", "A2", ("0", "0")))
                out.append((tag + f"/F{p}", mp, "inf", "E7" if p == 2 else "A2", ("0", "0")))
            if l == 3 and p == 2:
                out.append((tag + f"/F{p}", mp, "inf", "D4", ("0", "1")))
    m3 = weierstrass.x_p_model(3)
    for place, d in (("t", "E8"), ("t - 1", "E8"), ("t + 1", "A2")):
        out.append(("X_3/Q", m3, place, d, ("0", "0")))
    for c, d in ((0, "E8"), (1, "E8"), (-1, "A2")):
        out.append(("X_3/F3", m3.reduce(), _lin(3, c), d, ("0", "0")))
    out.append(("X_3/F3", m3.reduce(), "inf", "A2", ("1", "0")))
    for p in (5, 7, 11, 13, 17, 19):
        m = weierstrass.x_p_model(p)
        mp = m.reduce()
        for mm, tag in ((m, f"X_{p}/Q"), (mp, f"X_{p}/F{p}")):
            out.append((tag, mm, "t", XP_T0[p], ("0", "0")))
            out.append((tag, mm, "inf", XP_INF[p], ("0", "0")))
        # special fiber at t = c_p^(1/p) = c_p over F_p, singular point (b_p, 0)
        c = Fraction(-4, 27) if p in (5, 7) else Fraction(-27, 4)
        F = prime_field(p)
        cp = F(c.numerator) / F(c.denominator)
        b = F(-3) / F(2) * mp.a[4](cp) / mp.a[3](cp)
        out.append((f"X_{p}/F{p}", mp, _lin(p, cp.v), f"A{p - 1}", (str(b.v), "0")))
    return out


def criterion_8():
    tables, mism, extra = {}, [], []
    entries = printed_tate_entries()
    for name, m, place, want, pt in entries:
        if name not in tables:
            tables[name] = {f.place: f for f in weierstrass.surface_singularity_table(m)}
        got = tables[name].get(place)
        gd = got.dynkin if got else None
        gpt = tuple(got.point) if got and got.point is not None else None
        if gd != want or (want and gpt != pt):
            mism.append(f"{name} at {place}: {gd} {gpt}, printed {want} {pt if want else ''}".rstrip())
    for name, tab in tables.items():
        listed = {e[2] for e in entries if e[0] == name}
        extra += [f"{name} {pl} {f.dynkin}" for pl, f in tab.items() if pl not in listed]
    detail = f"{len(entries)} printed entries, {len(mism)} mismatches"
    if mism:
        detail += f": {mism}"
    if extra:
        detail += f"; {len(extra)} unlisted fibers ({', '.join(extra)})"
    return not mism, detail


# -- 9: RDP censuses -----------------------------------------------------------------------

def rdp_surfaces():
    X3 = ["x0", "x1", "x2"]
    return [
        ("p=7 double sextic", rdpcheck.DoubleCover(-parse("x0^5*x1+x1^5*x2+x2^5*x0", X3)), prime_field(7), {"A6": 3}),
        ("p=5 quartic", parse("x1^3*x2+x2^3*x3+x3^3*x4+x4^3*x1", ["x1", "x2", "x3", "x4"]), conway_like(5, 2), {"A4": 4}),
        ("p=3 double sextic", rdpcheck.DoubleCover(-parse("x0^6+x1^6+x2^6+x0^2*x1^2*x2^2", X3)), conway_like(3, 2),
         {"A2": 6}),
        ("p=2 quartic", parse("w^3*x+w*x^3+y^3*z+y*z^3+w*x*y*z", ["w", "x", "y", "z"]), prime_field(2), {"A3": 4}),
        ("double cover p=5", rdpcheck.DoubleCover(parse("(x^3-x*z^2)^2+(y^3-y*z^2)^2", ["x", "y", "z"])),
         prime_field(5), {"A1": 9}),
        ("double cover p=7", rdpcheck.DoubleCover(parse("(x^3-x*z^2)^2+(y^3-y*z^2)^2", ["x", "y", "z"])),
         prime_field(7), {"A1": 9}),
    ]


def criterion_9():
    out, ok = [], True
    for name, S, K, want in rdp_surfaces():
        got = rdpcheck.census(rdpcheck.surface_singular_scan(S, K))
        ok &= got == want
        out.append(f"{name} {got}" + ("" if got == want else f" (printed {want})"))
    return ok, "; ".join(out)


# -- 10: normal-form identities -------------------------------------------------------------

def criterion_10():
    cases = ["Dm", "E6", "D4-alt", "Am-ideal", "A1-ideal"]
    status = {c: rdpcheck.verify_section3_identities(c).status for c in cases}
    muts = rdpcheck.mutation_cases()
    missed = [label for label, case, params, m in muts if not rdpcheck.run_mutation(case, params, m)]
    audit = rdpcheck.symplectic_weight_audit()
    ok = all(s == "PASS" for s in status.values()) and len(muts) >= 20 and not missed \
        and all(r["symplectic"] for r in audit)
    return ok, (f"cases {status}; {len(muts) - len(missed)}/{len(muts)} mutations detected; "
                f"weight audit {sum(r['symplectic'] for r in audit)}/{len(audit)}")


# -- 11: epsilon ----------------------------------------------------------------------------

def criterion_11():
    eps = [lattice.epsilon(n) for n in range(1, 9)]
    traces = [lattice.symplectic_trace(n) for n in range(1, 9)]
    bound = lattice.picard_lower_bound({1: 1, 2: 5, 4: 10, 5: 4})
    ok = eps == [24, 8, 6, 4, 4, 2, 3, 2] and traces == [e - 2 for e in eps] and bound == 19
    return ok, f"eps {[int(e) for e in eps]}; traces {traces}; picard bound {bound}"


# -- 12: the wild example and Shioda-Tate ------------------------------------------------------

def criterion_12():
    p = 5
    m = weierstrass.wild_model(p)
    a1 = [ai(1) for ai in m.a]
    P = weierstrass.wild_section(p, 1)
    want = (Fraction(1 + p ** 6, p ** 12), Fraction(1 + p ** 6, p ** 18))
    E = weierstrass.Curve(a1)
    res = weierstrass.torsion_test(a1, P)
    bound = weierstrass.shioda_tate_bound(weierstrass.singular_fiber_table(weierstrass.x_p_model(3)))
    ok = P == want and E.on_curve(P) and res["torsion"] is False and bound == 20
    return ok, f"Z(1) on fiber: {E.on_curve(P)}; torsion: {res['torsion']}; Shioda-Tate bound X_3/Q: {bound}"


# -- 13: property suites ---------------------------------------------------------------------

def criterion_13():
    import props
    counts = props.run_all()
    ok = all(v >= props.N_CASES for v in counts.values())
    return ok, f"cases per suite {counts}, zero failures"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 14)}


def run(n: int):
    """(ok, detail, seconds); ok includes the runtime bound."""
    t = time.perf_counter()
    ok, detail = CRITERIA[n]()
    dt = time.perf_counter() - t
    if dt >= RUNTIME[n]:
        ok = False
        detail += f"; runtime {dt:.2f} s exceeds {RUNTIME[n]} s"
    return ok, detail, dt
