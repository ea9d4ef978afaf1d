"""
The partial groupoid algebra K_par(G), handled through its image in the
expansion algebra: a word [g1]...[gk] is sent to lambda(g1)...lambda(gk).

Nothing here builds K_par(G) as a quotient of a free algebra. The defining
relations are checked on lambda, so the word map is well defined, and every
expansion basis pair (B, h) is written as a signed sum of words, so it is
onto. Injectivity comes from counting: words irreducible under a
length-decreasing rewrite system have images of rank |G^BR|.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

from .algebra import rank_of_span, subalgebra_closure, structure_constants
from .br import DEFAULT_CAP, br_count, is_br_pair, mask_of, members, y_set
from .fields import QQ
from .groupoid import connected_components
from .linalg import EchelonBasis, ExactMatrix, matrix_product
from .partial_rep import expansion_algebra, lambda_rep, subsets
from .report import ValidationReport


def word_text(G, w):
    if not w:
        return "1"
    return "".join(f"[{G.name(g)}]" for g in w)


def parse_word(G, text):
    text = text.strip()
    if text == "1":
        return ()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"bad word {text!r}")
    return tuple(G.index_of(name) for name in text[1:-1].split("]["))


def eval_word(G, w, field=QQ, cap=DEFAULT_CAP, lam=None):
    """lambda(g1) ... lambda(gk); the empty word goes to the unit."""
    br, A = expansion_algebra(G, field, cap)
    lam = lam or lambda_rep(G, field, cap)
    x = A.unit()
    for g in w:
        x = x * lam[g]
    return x


def eval_combination(G, combo, field=QQ, cap=DEFAULT_CAP, lam=None):
    br, A = expansion_algebra(G, field, cap)
    lam = lam or lambda_rep(G, field, cap)
    total = A.zero()
    for c, w in combo:
        total = total + c * eval_word(G, w, field, cap, lam)
    return total


def relation_instances(G):
    """
    Every instance of the defining relations as (name, witnesses, lhs, rhs),
    sides being words; ``rhs = None`` stands for 0.
    """
    inv, t = G.inv, G.table
    nm = G.name
    out = []
    for g, h in G.composable_pairs():
        gh = t[g][h]
        out.append(("(i)", (nm(g), nm(h)), (inv[g], g, h), (inv[g], gh)))
        out.append(("(ii)", (nm(g), nm(h)), (g, h, inv[h]), (gh, inv[h])))
    for g in G.arrows:
        r, d = G.identity[G.ran[g]], G.identity[G.dom[g]]
        out.append(("(iii)", (nm(g),), (r, g), (g,)))
        out.append(("(iii)", (nm(g),), (g, d), (g,)))
    for g in G.arrows:
        for h in G.arrows:
            if t[g][h] is None:
                out.append(("(iv)", (nm(g), nm(h)), (g, h), None))
    return out


def check_defining_relations(G, field=QQ, cap=DEFAULT_CAP, lam=None):
    """
    Empty report iff lambda (or the family ``lam`` given instead) satisfies
    relations (i)-(iv) and the identities sum to the unit.
    """
    br, A = expansion_algebra(G, field, cap)
    lam = lam or lambda_rep(G, field, cap)
    report = ValidationReport()
    for name, wit, lhs, rhs in relation_instances(G):
        left = eval_word(G, lhs, field, cap, lam)
        right = A.zero() if rhs is None else eval_word(G, rhs, field, cap, lam)
        if left != right:
            report.add(name, wit, f"{word_text(G, lhs)} != {'0' if rhs is None else word_text(G, rhs)}")
    total = A.zero()
    for e in G.identity:
        total = total + lam[e]
    if total != A.unit():
        report.add("unit", tuple(G.name(e) for e in G.identity), "sum of [e] is not the unit")
    return report


def _as_mask(B):
    return B if isinstance(B, int) else mask_of(B)


def telescope_word(G, B, h):
    """
    A word whose image is the sum of (A, h) over all valid A containing B.

    With B minus {h^-1} = {beta_1 < ... < beta_{k-1}} put b_i = h beta_i. The
    letters are g_1 = b_1, g_i = b_{i-1}^-1 b_i and g_k = b_{k-1}^-1 h, so that
    the suffix g_{i+1}...g_k equals beta_i^-1 and the whole word multiplies to h.
    """
    mask = _as_mask(B)
    if not is_br_pair(G, (mask, h)):
        raise ValueError(f"({sorted(G.name(a) for a in members(mask))}, {G.name(h)}) is not a valid pair")
    t, inv = G.table, G.inv
    betas = [a for a in members(mask) if a != inv[h]]
    if not betas:
        return (h,)
    bs = [t[h][beta] for beta in betas]
    word = [bs[0]]
    for prev, cur in zip(bs, bs[1:]):
        word.append(t[inv[prev]][cur])
    word.append(t[inv[bs[-1]]][h])
    return tuple(word)


def extract_basis_element(G, B, h):
    """
    Signed words whose images add up to the single basis pair (B, h):
    inclusion-exclusion over T in Y_h \\ B of (-1)^|T| telescope(B + T, h).
    """
    mask = _as_mask(B)
    if not is_br_pair(G, (mask, h)):
        raise ValueError("not a valid pair")
    free = y_set(G, h) - set(members(mask))
    out = []
    for T in subsets(free):
        out.append(((-1) ** len(T), telescope_word(G, mask | mask_of(T), h)))
    return out


def extraction_failures(G, field=QQ, cap=DEFAULT_CAP):
    """Pairs for which the extracted combination is not exactly the basis vector."""
    br, A = expansion_algebra(G, field, cap)
    lam = lambda_rep(G, field, cap)
    bad = []
    for i, (B, h) in enumerate(br.pairs):
        x = eval_combination(G, extract_basis_element(G, B, h), field, cap, lam)
        if x != A.basis(i):
            bad.append(br.label(i))
    return bad


def images_via_extraction(rep, cap=DEFAULT_CAP):
    """
    Values any homomorphism psi with psi(lambda(g)) = pi(g) must take on the
    pair basis, obtained by pushing the extraction words through pi.
    """
    G = rep.groupoid
    br, A = expansion_algebra(G, rep.field, cap)
    out = []
    for B, h in br.pairs:
        M = ExactMatrix.zeros(rep.dim, field=rep.field)
        for c, w in extract_basis_element(G, B, h):
            M = M + c * matrix_product([rep.images[g] for g in w], rep.dim, rep.field)
        out.append(M)
    return out


def generation_rank(G, field=QQ, cap=DEFAULT_CAP):
    br, A = expansion_algebra(G, field, cap)
    return len(subalgebra_closure(A, lambda_rep(G, field, cap), include_unit=False))


# --- rewriting ---------------------------------------------------------------

ZERO = "0"


class RewriteRule(NamedTuple):
    name: str
    width: int
    apply: object  # (G, window) -> replacement or ZERO; None when the rule does not match


def _kill(G, w):
    a, b = w
    return ZERO if G.table[a][b] is None else None


def _absorb_left(G, w):
    a, b = w
    return (b,) if a == G.identity[G.ran[b]] else None


def _absorb_right(G, w):
    a, b = w
    return (a,) if b == G.identity[G.dom[a]] else None


def _contract_left(G, w):
    a, b, c = w
    if a == G.inv[b] and G.table[b][c] is not None:
        return (a, G.table[b][c])
    return None


def _contract_right(G, w):
    a, b, c = w
    if c == G.inv[b] and G.table[a][b] is not None:
        return (G.table[a][b], c)
    return None


RULES = (
    RewriteRule("(iv)", 2, _kill),
    RewriteRule("(iii)-left", 2, _absorb_left),
    RewriteRule("(iii)-right", 2, _absorb_right),
    RewriteRule("(i)", 3, _contract_left),
    RewriteRule("(ii)", 3, _contract_right),
)


def rewrite_step(G, w):
    """Apply the leftmost applicable rule: (new word or ZERO, rule name), or None."""
    for i in range(len(w)):
        for rule in RULES:
            if i + rule.width > len(w):
                continue
            r = rule.apply(G, w[i:i + rule.width])
            if r is ZERO:
                return ZERO, rule.name
            if r is not None:
                return w[:i] + r + w[i + rule.width:], rule.name
    return None


def normal_form(G, w):
    """Rewrite until irreducible; ZERO if the word dies."""
    w = tuple(w)
    while True:
        step = rewrite_step(G, w)
        if step is None:
            return w
        w = step[0]
        if w is ZERO:
            return ZERO


def is_irreducible(G, w):
    return rewrite_step(G, tuple(w)) is None


def _tail_irreducible(G, w):
    # only windows touching the last letter are new
    n = len(w)
    for rule in RULES:
        if n >= rule.width and rule.apply(G, w[n - rule.width:]) is not None:
            return False
    return True


@dataclass
class NormalForms:
    words: list  # deduplicated by image, zero images dropped
    images: list
    rank: int
    ranks_by_length: dict = field(default_factory=dict)


def normal_form_words(G, max_len, field=QQ, cap=DEFAULT_CAP):
    """
    All nonempty irreducible words of length <= max_len, keeping the first
    word for each distinct nonzero image, plus the rank of the images.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    br, A = expansion_algebra(G, field, cap)
    lam = lambda_rep(G, field, cap)
    E = EchelonBasis(A.dim, field)
    seen = set()
    words, images = [], []
    ranks = {}
    layer = [((g,), lam[g]) for g in G.arrows]
    for length in range(1, max_len + 1):
        nxt = []
        for w, x in layer:
            if not x.is_zero() and x not in seen:
                seen.add(x)
                words.append(w)
                images.append(x)
                E.add(x.to_vector())
            if length < max_len:
                for g in G.arrows:
                    w2 = w + (g,)
                    if _tail_irreducible(G, w2):
                        nxt.append((w2, x * lam[g]))
        ranks[length] = len(E)
        layer = nxt
    return NormalForms(words, images, len(E), ranks)


def default_max_len(G):
    return max(len(y_set(G, g)) for g in G.arrows) + 1


# --- certificate -------------------------------------------------------------

@dataclass
class IsoCertificate:
    field: str
    br_count: int
    enumerated_count: int
    relations_ok: bool
    relation_failures: list
    generation_rank: int
    extraction_ok: bool
    extraction_failures: list
    normal_form_rank: int
    max_len_used: int
    components_ok: bool
    components: list

    @property
    def generation_ok(self):
        return self.generation_rank == self.br_count

    @property
    def normal_form_ok(self):
        return self.normal_form_rank == self.br_count

    @property
    def passed(self):
        return (self.relations_ok and self.generation_ok and self.extraction_ok
                and self.normal_form_ok and self.components_ok
                and self.br_count == self.enumerated_count)

    def checks(self):
        return {
            "relations": self.relations_ok,
            "generation": self.generation_ok,
            "extraction": self.extraction_ok,
            "normal_forms": self.normal_form_ok,
            "components": self.components_ok,
        }

    def to_json(self):
        return {
            "passed": self.passed,
            "field": self.field,
            "relations_ok": self.relations_ok,
            "br_count": self.br_count,
            "generation_rank": self.generation_rank,
            "extraction_ok": self.extraction_ok,
            "normal_form_rank": self.normal_form_rank,
            "max_len_used": self.max_len_used,
            "components_ok": self.components_ok,
            "components": [c.to_json() for c in self.components],
            "failures": {
                "relations": self.relation_failures,
                "extraction": self.extraction_failures,
            },
        }


def verify_iso(G, field=QQ, cap=DEFAULT_CAP, max_len=None, split_components=True):
    """
    Certify that words in lambda realize K_par(G) as the expansion algebra:
    relations hold, lambda generates, each basis pair is extracted exactly,
    normal-form words reach full rank, and the count is additive over
    connected components (each component is certified on its own).
    """
    count = br_count(G)
    br, A = expansion_algebra(G, field, cap)

    rel = check_defining_relations(G, field, cap)
    gen = generation_rank(G, field, cap)
    bad = extraction_failures(G, field, cap)

    bound = max_len if max_len is not None else default_max_len(G)
    nf = normal_form_words(G, bound, field, cap)
    used = next((L for L in sorted(nf.ranks_by_length) if nf.ranks_by_length[L] == count), bound)
    nf_rank = nf.ranks_by_length[used]

    subs = []
    comps_ok = True
    if split_components:
        comps = connected_components(G)
        if len(comps) > 1:
            subs = [verify_iso(c.groupoid, field, cap, max_len, split_components=False) for c in comps]
            comps_ok = sum(s.br_count for s in subs) == count and all(s.passed for s in subs)

    return IsoCertificate(
        field=field.name,
        br_count=count,
        enumerated_count=len(br),
        relations_ok=rel.ok,
        relation_failures=[v.to_json() for v in rel.violations],
        generation_rank=gen,
        extraction_ok=not bad,
        extraction_failures=bad,
        normal_form_rank=nf_rank,
        max_len_used=used,
        components_ok=comps_ok,
        components=subs,
    )


def monomial_basis(G, field=QQ, cap=DEFAULT_CAP, max_len=None):
    """
    Greedy basis of the expansion algebra made of images of normal-form words,
    as (words, images). Falls back to the bare pairs if words do not span.
    """
    br, A = expansion_algebra(G, field, cap)
    nf = normal_form_words(G, max_len or default_max_len(G), field, cap)
    E = EchelonBasis(A.dim, field)
    words, images = [], []
    for w, x in zip(nf.words, nf.images):
        if E.add(x.to_vector()):
            words.append(w)
            images.append(x)
    if len(words) < A.dim:
        return None, [A.basis(i) for i in range(A.dim)]
    return words, images


def iso_table(G, field=QQ, cap=DEFAULT_CAP, max_len=None):
    """Structure constants of the expansion algebra, labelled by monomials when possible."""
    br, A = expansion_algebra(G, field, cap)
    words, basis = monomial_basis(G, field, cap, max_len)
    labels = [word_text(G, w) for w in words] if words else [br.label(i) for i in range(A.dim)]
    c = structure_constants(A, basis)
    fmt = field.format
    entries = []
    for i in range(len(basis)):
        for j in range(len(basis)):
            for k, v in enumerate(c[i][j]):
                if v:
                    entries.append([i, j, k, fmt(v)])
    return {
        "field": field.name,
        "labels": "monomials" if words else "pairs",
        "basis": [{"label": lab, "element": x.text()} for lab, x in zip(labels, basis)],
        "table": entries,
    }


def span_rank(G, words, field=QQ, cap=DEFAULT_CAP):
    lam = lambda_rep(G, field, cap)
    return rank_of_span([eval_word(G, w, field, cap, lam) for w in words])
