"""Bound formulas, the precedence relation, and both certificate kinds."""

from fractions import Fraction

import pytest

from onionpeel import (
    ChainCertificate,
    DomainError,
    Grid,
    InternalInconsistencyError,
    LayerAssignment,
    NormDescentCertificate,
    ParseError,
    build_chain_certificate,
    build_norm_certificate,
    certificate_from_text,
    certificate_to_text,
    convex_witness_for_prec,
    lower_bound,
    materialize,
    peel,
    prec,
    staircase_chain,
    upper_bound,
    verify,
)


def test_bound_formulas():
    assert upper_bound(2, 3) == 19
    assert lower_bound(2, 3) == 7
    assert upper_bound(5, 1) == 6
    assert lower_bound(5, 1) == 6
    assert upper_bound(3, 0) == 1
    assert lower_bound(3, 0) == 1
    with pytest.raises(DomainError):
        upper_bound(0, 3)
    with pytest.raises(DomainError):
        lower_bound(2, -1)


def test_prec():
    assert prec((0, 3), (-1, 3))
    assert prec((1, 1), (1, 2))
    assert prec((1, 0), (3, 0))
    assert not prec((1, 1), (2, 2))
    assert not prec((2, 0), (1, 0))
    assert not prec((1, 2), (1, 2))
    assert not prec((0, 3), (1, -3))
    with pytest.raises(DomainError):
        prec((1, 2), (1, 2, 3))


def test_prec_witness_interior_point():
    a = peel(materialize(Grid(2, 3)))
    w = convex_witness_for_prec((1, 0), (3, 0), a)
    assert dict(w.support) == {
        (3, 0): Fraction(2, 3),
        (-3, 0): Fraction(1, 3),
    }
    assert w.verify((1, 0))


def test_prec_witness_zero_coordinate():
    a = peel(materialize(Grid(2, 3)))
    w = convex_witness_for_prec((0, 3), (-1, 3), a)
    assert dict(w.support) == {
        (-1, 3): Fraction(1, 2),
        (1, 3): Fraction(1, 2),
    }


def test_prec_witness_requires_precedence():
    a = peel(materialize(Grid(2, 1)))
    with pytest.raises(DomainError):
        convex_witness_for_prec((1, 1), (0, 0), a)


def test_prec_witness_rejects_asymmetric_assignment():
    pts = materialize(Grid(2, 1))
    labels = [2 if p == (-1, 0) else 1 for p in pts]
    lopsided = LayerAssignment(pts, labels)
    with pytest.raises(InternalInconsistencyError):
        convex_witness_for_prec((0, 0), (1, 0), lopsided)


def test_staircase_chain():
    assert staircase_chain(Grid(2, 1)) == [(0, 0), (1, 0), (1, 1)]
    assert staircase_chain(Grid(1, 2)) == [(0,), (1,), (2,)]
    chain = staircase_chain(Grid(2, 3))
    assert len(chain) == 7
    assert chain[0] == (0, 0) and chain[-1] == (3, 3)
    assert all(prec(chain[i], chain[i + 1]) for i in range(6))


@pytest.mark.parametrize("d,n", [(1, 2), (2, 1), (2, 3), (3, 1), (3, 2)])
def test_built_certificates_verify(d, n):
    g = Grid(d, n)
    a = peel(materialize(g))
    nc = build_norm_certificate(g, a)
    cc = build_chain_certificate(g, a)
    assert verify(nc).ok and verify(nc).reason is None
    assert verify(cc).ok
    assert lower_bound(d, n) <= a.num_layers <= upper_bound(d, n)


def test_norm_certificate_frozen_values():
    g = Grid(2, 3)
    nc = build_norm_certificate(g, peel(materialize(g)))
    assert nc.radii_sq == (18, 13, 10, 9, 5, 4, 2, 1, 0)
    g = Grid(3, 1)
    nc = build_norm_certificate(g, peel(materialize(g)))
    assert nc.radii_sq == (3, 2, 1, 0)
    g = Grid(1, 2)
    nc = build_norm_certificate(g, peel(materialize(g)))
    assert nc.radii_sq == (4, 1, 0)


def test_chain_certificate_frozen_values():
    g = Grid(2, 1)
    cc = build_chain_certificate(g, peel(materialize(g)))
    assert cc.chain == ((0, 0), (1, 0), (1, 1))
    assert cc.layer_indices == (3, 2, 1)
    g = Grid(1, 2)
    cc = build_chain_certificate(g, peel(materialize(g)))
    assert cc.layer_indices == (3, 2, 1)
    g = Grid(2, 3)
    cc = build_chain_certificate(g, peel(materialize(g)))
    assert cc.layer_indices == (9, 8, 6, 4, 3, 2, 1)


def test_builders_reject_foreign_assignment():
    a = peel(materialize(Grid(2, 2)))
    with pytest.raises(DomainError):
        build_norm_certificate(Grid(2, 1), a)
    with pytest.raises(DomainError):
        build_chain_certificate(Grid(3, 2), a)


def test_verify_norm_rejections():
    g = Grid(2, 3)
    r = verify(NormDescentCertificate(g, (10, 10, 5)))
    assert not r and r.reason == "not strictly decreasing"
    r = verify(NormDescentCertificate(g, ()))
    assert r.reason == "empty radii list"
    r = verify(NormDescentCertificate(g, (17, 5, 0)))
    assert "first entry 17" in r.reason
    r = verify(NormDescentCertificate(g, (18, 13, -1)))
    assert "negative entry at layer 3" in r.reason


def test_verify_chain_rejections():
    g = Grid(2, 1)
    ok_chain = ((0, 0), (1, 0), (1, 1))
    r = verify(ChainCertificate(g, ((0, 0), (1, 1)), (2, 1)))
    assert "chain length 2" in r.reason
    r = verify(ChainCertificate(g, ((1, 0), (1, 1), (1, 1)), (3, 2, 1)))
    assert "origin" in r.reason
    r = verify(ChainCertificate(g, ((0, 0), (1, 0), (0, 1)), (3, 2, 1)))
    assert "corner" in r.reason
    r = verify(ChainCertificate(g, ((0, 0), (2, 0), (1, 1)), (3, 2, 1)))
    assert "outside the grid" in r.reason
    r = verify(ChainCertificate(g, ((0, 0), (1, 1), (1, 1)), (3, 2, 1)))
    assert r.reason == "prec violated at index 1"
    r = verify(ChainCertificate(g, ok_chain, (3, 3, 1)))
    assert r.reason == "layer indices not strictly decreasing"
    r = verify(ChainCertificate(g, ok_chain, (3, 2, 0)))
    assert "not a positive integer" in r.reason
    assert verify(ChainCertificate(g, ok_chain, (3, 2, 1))).ok


def test_verify_rejects_non_certificate():
    with pytest.raises(DomainError):
        verify("kind: norm-descent")


def test_text_round_trip():
    for d, n in ((1, 2), (2, 1), (2, 3), (3, 1)):
        g = Grid(d, n)
        a = peel(materialize(g))
        for cert in (build_norm_certificate(g, a), build_chain_certificate(g, a)):
            text = certificate_to_text(cert)
            assert certificate_from_text(text) == cert
            assert certificate_to_text(certificate_from_text(text)) == text


def test_text_exact_format():
    g = Grid(1, 1)
    nc = build_norm_certificate(g, peel(materialize(g)))
    assert certificate_to_text(nc) == (
        "kind: norm-descent\nd: 1\nn: 1\nentries: 2\n1 1\n2 0\n"
    )
    cc = build_chain_certificate(g, peel(materialize(g)))
    assert certificate_to_text(cc) == (
        "kind: precedence-chain\nd: 1\nn: 1\nentries: 2\n0 2\n1 1\n"
    )


@pytest.mark.parametrize(
    "text",
    [
        "",
        "kind: mystery\nd: 1\nn: 1\nentries: 0\n",
        "d: 1\nn: 1\nentries: 0\n",
        "kind: norm-descent\nd: one\nn: 1\nentries: 1\n1 1\n",
        "kind: norm-descent\nd: 1\nn: 1\nentries: 3\n1 1\n2 0\n",
        "kind: norm-descent\nd: 1\nn: 1\nentries: 2\n1 1\n2 0 7\n",
        "kind: norm-descent\nd: 1\nn: 1\nentries: 2\n1 1\n3 0\n",
        "kind: norm-descent\nd: 1\nn: 1\nentries: 2\n1 1\n2 x\n",
        "kind: precedence-chain\nd: 2\nn: 1\nentries: 3\n0 0 3\n1 0\n1 1 1\n",
        "kind: norm-descent\nd: 0\nn: 1\nentries: 1\n1 0\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        certificate_from_text(text)


def test_parse_tolerates_blank_lines():
    g = Grid(1, 1)
    nc = build_norm_certificate(g, peel(materialize(g)))
    text = certificate_to_text(nc).replace("\n", "\n\n")
    assert certificate_from_text(text) == nc
