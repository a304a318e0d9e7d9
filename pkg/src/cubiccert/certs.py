"""Derivation-tree certificates for unirationality degrees and universal
CH0-triviality of separated-variables cubic types.

A certificate node carries a statement about a type signature, the rule
that proved it, a citation string, and its premises.  The validator
re-checks every node locally and shares no code with the search engines.

Rule inventory (premise arity in brackets):
  BASE4 [0]     any 4-variable type: a smooth cubic surface, hence rational
                and universally CH0-trivial.
  R-SATZ1 [1]   T+{1} unirational of degree d  =>  T+{3} of degree 3d.
  R-SATZ2I [1]  T+{1} UCT  =>  T+{2} UCT.
  R-SATZ2II [1] T+{1} UCT  =>  T+{3} UCT.
  R-REFINE [1]  statement transfers to any refinement of the subject.
  R-MERGE [1]   statement transfers when blocks merge into blocks of size <= 3.
  AX-DEG2 [0]   every smooth cubic hypersurface in >= 4 variables is
                unirational of degree 2.
  R-GCD [2]     unirational of two coprime degrees  =>  A0 trivial.
  UCT-TO-A0 [1] universal CH0-triviality specializes to A0 = 0.
"""

from dataclasses import dataclass
from math import gcd

from .errors import BlockTooLarge, NoDerivation, TooFewVariables
from .forms import TypeSignature, make_type

UNIRATIONAL = "unirational"
UCT = "uct"
A0_TRIVIAL = "a0-trivial"

RULE_ARITY = {
    "BASE4": 0,
    "R-SATZ1": 1,
    "R-SATZ2I": 1,
    "R-SATZ2II": 1,
    "R-REFINE": 1,
    "R-MERGE": 1,
    "AX-DEG2": 0,
    "R-GCD": 2,
    "UCT-TO-A0": 1,
}

CITATIONS = {
    "BASE4": "every smooth complex cubic surface is rational",
    "R-SATZ1": "composing with the degree-3 correspondence replaces a "
               "1-variable block by a 3-variable block and triples the degree",
    "R-SATZ2I": "adding a binary block through the degree-3 correspondence "
                "preserves universal CH0-triviality (curve argument)",
    "R-SATZ2II": "adding a ternary block through the degree-3 correspondence "
                 "preserves universal CH0-triviality (rational-surface argument)",
    "R-REFINE": "a statement about a type covers every refinement of it",
    "R-MERGE": "blocks merged into blocks of at most 3 variables",
    "AX-DEG2": "every smooth cubic hypersurface of dimension >= 2 is "
               "unirational of degree 2 (cited, not re-derived)",
    "R-GCD": "coprime unirationality degrees force A0 = 0 over every field",
    "UCT-TO-A0": "universal CH0-triviality gives A0 = 0 over every field",
}


@dataclass(frozen=True)
class Statement:
    kind: str                 # "unirational" | "uct" | "a0-trivial"
    subject: TypeSignature
    degree: int = None        # only for "unirational"

    def __post_init__(self):
        if self.kind == UNIRATIONAL:
            if self.degree is None or self.degree < 1:
                raise ValueError("unirational statements need a degree >= 1")
        elif self.degree is not None:
            raise ValueError(f"{self.kind} statements carry no degree")

    def __str__(self):
        if self.kind == UNIRATIONAL:
            label = "Rational" if self.degree == 1 else \
                f"Unirational({self.degree})"
        elif self.kind == UCT:
            label = "UCT"
        else:
            label = "A0Trivial"
        return f"{label} for type {self.subject}"


def unirational(sizes, degree):
    return Statement(kind=UNIRATIONAL, subject=make_type(sizes), degree=degree)


def uct(sizes):
    return Statement(kind=UCT, subject=make_type(sizes))


def a0_trivial(sizes):
    return Statement(kind=A0_TRIVIAL, subject=make_type(sizes))


@dataclass(frozen=True)
class Certificate:
    conclusion: Statement
    rule: str
    premises: tuple = ()
    citation: str = ""

    def __post_init__(self):
        if not self.citation:
            object.__setattr__(self, "citation", CITATIONS.get(self.rule, ""))

    def walk(self):
        yield self
        for premise in self.premises:
            yield from premise.walk()


# ---------------------------------------------------------------------------
# serialization (canonical JSON shape, stable key order)
# ---------------------------------------------------------------------------

def certificate_to_json(cert):
    conclusion = {"kind": cert.conclusion.kind}
    if cert.conclusion.kind == UNIRATIONAL:
        conclusion["degree"] = cert.conclusion.degree
    conclusion["type"] = list(cert.conclusion.subject.sizes)
    return {
        "conclusion": conclusion,
        "rule": cert.rule,
        "citation": cert.citation,
        "premises": [certificate_to_json(p) for p in cert.premises],
    }


def certificate_from_json(data):
    conclusion = data["conclusion"]
    kind = conclusion["kind"]
    statement = Statement(
        kind=kind,
        subject=make_type(conclusion["type"]),
        degree=conclusion.get("degree") if kind == UNIRATIONAL else None,
    )
    premises = tuple(certificate_from_json(p) for p in data["premises"])
    return Certificate(conclusion=statement, rule=data["rule"],
                       premises=premises, citation=data.get("citation", ""))


# ---------------------------------------------------------------------------
# validator (independent of the search engines)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    reason: str = ""
    path: tuple = ()

    def __bool__(self):
        return self.valid


def _refines(fine, coarse):
    """Can the multiset `fine` be partitioned into groups summing to the
    entries of `coarse`?"""
    fine = sorted(fine, reverse=True)
    coarse = sorted(coarse, reverse=True)
    if sum(fine) != sum(coarse):
        return False

    def place(remaining, targets):
        if not targets:
            return not remaining
        t = targets[0]
        seen = set()
        for subset in _subsets_summing(remaining, t):
            key = tuple(subset)
            if key in seen:
                continue
            seen.add(key)
            rest = list(remaining)
            for x in subset:
                rest.remove(x)
            if place(rest, targets[1:]):
                return True
        return False

    return place(fine, coarse)


def _subsets_summing(items, target):
    """Sorted subsets of `items` (a descending list) summing to target."""
    out = []

    def rec(start, acc, total):
        if total == target:
            out.append(tuple(acc))
            return
        if total > target:
            return
        for i in range(start, len(items)):
            if i > start and items[i] == items[i - 1]:
                continue
            acc.append(items[i])
            rec(i + 1, acc, total + items[i])
            acc.pop()

    rec(0, [], 0)
    return out


def _remove_one(sizes, value):
    """sizes minus one occurrence of value, or None."""
    sizes = list(sizes)
    if value not in sizes:
        return None
    sizes.remove(value)
    return tuple(sorted(sizes, reverse=True))


def _check_node(cert):
    stmt = cert.conclusion
    sizes = stmt.subject.sizes
    if any(s < 1 for s in sizes):
        return "type signature has a non-positive block"
    if any(s > 3 for s in sizes):
        return "type signature has a block larger than 3 variables"
    rule = cert.rule
    if rule not in RULE_ARITY:
        return f"unknown rule {rule}"
    if len(cert.premises) != RULE_ARITY[rule]:
        return (f"rule {rule} expects {RULE_ARITY[rule]} premises, "
                f"got {len(cert.premises)}")

    if rule == "BASE4":
        if stmt.subject.total != 4:
            return "BASE4 subject must total exactly 4 variables"
        if not (stmt.kind == UCT or
                (stmt.kind == UNIRATIONAL and stmt.degree == 1)):
            return "BASE4 concludes Unirational(1) or UCT"
        return None

    if rule == "AX-DEG2":
        if stmt.subject.total < 4:
            return "AX-DEG2 needs at least 4 variables"
        if stmt.kind != UNIRATIONAL or stmt.degree != 2:
            return "AX-DEG2 concludes Unirational(2)"
        return None

    if rule == "R-SATZ1":
        prem = cert.premises[0].conclusion
        if prem.kind != UNIRATIONAL or stmt.kind != UNIRATIONAL:
            return "R-SATZ1 relates unirational statements"
        if stmt.degree != 3 * prem.degree:
            return "R-SATZ1 must triple the degree"
        t_prem = _remove_one(prem.subject.sizes, 1)
        t_conc = _remove_one(sizes, 3)
        if t_prem is None or t_conc is None or t_prem != t_conc:
            return "R-SATZ1 must replace a 1-block by a 3-block"
        return None

    if rule in ("R-SATZ2I", "R-SATZ2II"):
        grown = 2 if rule == "R-SATZ2I" else 3
        prem = cert.premises[0].conclusion
        if prem.kind != UCT or stmt.kind != UCT:
            return f"{rule} relates UCT statements"
        t_prem = _remove_one(prem.subject.sizes, 1)
        t_conc = _remove_one(sizes, grown)
        if t_prem is None or t_conc is None or t_prem != t_conc:
            return f"{rule} must replace a 1-block by a {grown}-block"
        return None

    if rule == "R-REFINE":
        prem = cert.premises[0].conclusion
        if (prem.kind, prem.degree) != (stmt.kind, stmt.degree):
            return "R-REFINE must keep the statement unchanged"
        if not _refines(sizes, prem.subject.sizes):
            return "conclusion subject must refine the premise subject"
        return None

    if rule == "R-MERGE":
        prem = cert.premises[0].conclusion
        if (prem.kind, prem.degree) != (stmt.kind, stmt.degree):
            return "R-MERGE must keep the statement unchanged"
        if not _refines(prem.subject.sizes, sizes):
            return "premise subject must refine the conclusion subject"
        return None

    if rule == "R-GCD":
        p1, p2 = (p.conclusion for p in cert.premises)
        if p1.kind != UNIRATIONAL or p2.kind != UNIRATIONAL:
            return "R-GCD needs two unirational premises"
        if p1.subject != stmt.subject or p2.subject != stmt.subject:
            return "R-GCD premises must share the conclusion subject"
        if gcd(p1.degree, p2.degree) != 1:
            return "R-GCD needs coprime degrees"
        if stmt.kind != A0_TRIVIAL:
            return "R-GCD concludes A0Trivial"
        return None

    if rule == "UCT-TO-A0":
        prem = cert.premises[0].conclusion
        if prem.kind != UCT or stmt.kind != A0_TRIVIAL:
            return "UCT-TO-A0 turns UCT into A0Trivial"
        if prem.subject != stmt.subject:
            return "UCT-TO-A0 must keep the subject"
        return None

    return f"unhandled rule {rule}"


def validate_certificate(cert):
    """Re-check every node's local side conditions."""
    stack = [(cert, ())]
    while stack:
        node, path = stack.pop()
        reason = _check_node(node)
        if reason is not None:
            return ValidationResult(valid=False, reason=reason, path=path)
        for i, premise in enumerate(node.premises):
            stack.append((premise, path + (i,)))
    return ValidationResult(valid=True)


# ---------------------------------------------------------------------------
# search engines
# ---------------------------------------------------------------------------

def _check_scope(t):
    if any(s > 3 for s in t.sizes):
        raise BlockTooLarge(
            f"type {t} has a block larger than 3 variables; the theorems "
            "require every block to involve at most 3")
    if t.total < 4:
        raise TooFewVariables(
            f"type {t} has {t.total} < 4 variables (dimension < 2)")


def _base4(sizes, kind):
    if kind == UNIRATIONAL:
        stmt = unirational(sizes, 1)
    else:
        stmt = uct(sizes)
    return Certificate(conclusion=stmt, rule="BASE4")


def derive_unirationality(t):
    """Backward search for a 3-power unirationality degree.

    Only even variable totals are reachable: BASE4 starts at 4 variables and
    R-SATZ1 always adds exactly 2, so an odd total admits no derivation in
    this calculus (and none is claimed by the underlying theorems).
    """
    _check_scope(t)
    if t.total % 2 != 0:
        raise NoDerivation(
            f"type {t} has an odd variable total {t.total}: the base case "
            "has 4 variables and each degree-tripling step adds 2, so only "
            "even totals carry a 3-power unirationality certificate")
    return _derive_unirational(t.sizes)


def _derive_unirational(sizes):
    sizes = tuple(sorted(sizes, reverse=True))
    total = sum(sizes)
    if total == 4:
        return _base4(sizes, UNIRATIONAL)
    if 3 in sizes:
        premise_sizes = _remove_one(sizes, 3) + (1,)
        prem = _derive_unirational(premise_sizes)
        return Certificate(
            conclusion=unirational(sizes, 3 * prem.conclusion.degree),
            rule="R-SATZ1", premises=(prem,))
    if 2 in sizes and 1 in sizes:
        coarse = _remove_one(_remove_one(sizes, 2), 1) + (3,)
        prem = _derive_unirational(coarse)
        return Certificate(
            conclusion=unirational(sizes, prem.conclusion.degree),
            rule="R-REFINE", premises=(prem,))
    if sizes.count(1) >= 3:
        coarse = sizes[:-3] + (3,)
        prem = _derive_unirational(coarse)
        return Certificate(
            conclusion=unirational(sizes, prem.conclusion.degree),
            rule="R-REFINE", premises=(prem,))
    # all blocks of size 2: split one, derive, merge back
    finer = _remove_one(sizes, 2) + (1, 1)
    prem = _derive_unirational(finer)
    return Certificate(
        conclusion=unirational(sizes, prem.conclusion.degree),
        rule="R-MERGE", premises=(prem,))


def certify_uct(t):
    """Backward search for a universal CH0-triviality certificate."""
    _check_scope(t)
    return _certify_uct(t.sizes)


def _certify_uct(sizes):
    sizes = tuple(sorted(sizes, reverse=True))
    total = sum(sizes)
    if total == 4:
        return _base4(sizes, UCT)
    if 2 in sizes and total - 1 >= 4:
        prem = _certify_uct(_remove_one(sizes, 2) + (1,))
        return Certificate(conclusion=uct(sizes), rule="R-SATZ2I",
                           premises=(prem,))
    if 3 in sizes and total - 2 >= 4:
        prem = _certify_uct(_remove_one(sizes, 3) + (1,))
        return Certificate(conclusion=uct(sizes), rule="R-SATZ2II",
                           premises=(prem,))
    # stuck peels only happen with at least two 1-blocks: coarsen two 1s
    # into a 2 and refine back down
    if sizes.count(1) < 2:
        raise NoDerivation(f"no UCT derivation found for {sizes}")
    coarse = _remove_one(_remove_one(sizes, 1), 1) + (2,)
    prem = _certify_uct(coarse)
    return Certificate(conclusion=uct(sizes), rule="R-REFINE",
                       premises=(prem,))


def conclude_a0_trivial(t, use_uct_route=True):
    """A0 = 0 certificate: UCT route by default, gcd route on request.

    The gcd route pairs the degree-2 axiom with a 3-power degree from
    `derive_unirationality`, so it is available exactly where that engine
    succeeds (even variable totals).
    """
    _check_scope(t)
    if use_uct_route:
        prem = certify_uct(t)
        return Certificate(conclusion=a0_trivial(t.sizes), rule="UCT-TO-A0",
                           premises=(prem,))
    deg2 = Certificate(conclusion=unirational(t.sizes, 2), rule="AX-DEG2")
    deg3k = derive_unirationality(t)
    return Certificate(conclusion=a0_trivial(t.sizes), rule="R-GCD",
                       premises=(deg2, deg3k))


def certify_form(form, use_uct_route=True):
    """Full pipeline for a parsed cubic form.

    Decomposes into blocks, requires an exact Smooth verdict, computes the
    type signature, and returns the UCT certificate together with an
    A0-triviality certificate (route selectable).
    """
    from .errors import FormSingular
    from .forms import decompose_blocks, form_smoothness, type_signature

    decomposition = decompose_blocks(form)
    t = type_signature(decomposition)
    _check_scope(t)
    verdict = form_smoothness(form, decomposition)
    if not verdict.smooth:
        raise FormSingular(f"form is singular: {verdict.witness}",
                           witness=verdict)
    uct_cert = certify_uct(t)
    a0_cert = conclude_a0_trivial(t, use_uct_route=use_uct_route)
    return {
        "type": t,
        "smoothness": verdict,
        "uct_certificate": uct_cert,
        "a0_certificate": a0_cert,
    }


def enumerate_types(min_total, max_total, max_block=3):
    """All type signatures with entries <= max_block and totals in range."""
    out = []

    def rec(total, max_part, acc):
        if total == 0:
            out.append(make_type(acc))
            return
        for part in range(min(max_part, total), 0, -1):
            acc.append(part)
            rec(total - part, part, acc)
            acc.pop()

    for total in range(min_total, max_total + 1):
        rec(total, max_block, [])
    return out
