import pytest

from mtspec.abelian import FgAbGroup, compose_homs
from mtspec.certified import load_data
from mtspec.charclasses import RingElement, restrict_generators, thom_module_piece
from mtspec.errors import (ContradictoryConstraints, NotRecorded, OutOfTable,
                           Unsupported)
from mtspec.spectra import (DerivationConstraint, SpectrumId, cohomology,
                            cover_map, default_constraints,
                            derive_cover_cohomology, grid_equivalence,
                            homotopy_group, hz_self_cohomology, verify_les,
                            vf_splitting)

Z = FgAbGroup(1)
Z2 = FgAbGroup(0, (2,))


class TestHomotopyTable:
    def test_values(self):
        assert homotopy_group(4, 4) == FgAbGroup(2)
        assert homotopy_group(3, 1) == FgAbGroup()
        assert homotopy_group(1, 1) == Z2
        assert homotopy_group(2, 2) == Z

    def test_out_of_table(self):
        with pytest.raises(OutOfTable):
            homotopy_group(3, 4)
        with pytest.raises(OutOfTable):
            homotopy_group(5, 0)


class TestVfSplitting:
    def test_dimension_four(self):
        split = vf_splitting(4)
        assert split.group == FgAbGroup(2)
        assert split.invariants == ("(chi+sigma)/2", "signature")

    def test_dimension_two(self):
        split = vf_splitting(2)
        assert split.group == Z
        assert split.invariants == ("chi/2",)

    def test_dimension_three_trivial(self):
        split = vf_splitting(3)
        assert split.group == FgAbGroup()
        assert split.invariants == ()

    def test_dimension_one(self):
        split = vf_splitting(1)
        assert split.group == Z2
        assert split.invariants == ("kr",)


class TestHzTable:
    def test_values(self):
        assert hz_self_cohomology(5) == FgAbGroup(0, (6,))
        assert hz_self_cohomology(3) == Z2
        assert hz_self_cohomology(0) == Z

    def test_out_of_table(self):
        with pytest.raises(OutOfTable):
            hz_self_cohomology(7)


class TestCohomology:
    def test_cover_entries(self):
        entry = cohomology(SpectrumId(4, 1), 4)
        assert entry.group == FgAbGroup(2) and entry.names == ("psi", "sigma")
        entry = cohomology(SpectrumId(2, 1), 2)
        assert entry.group == Z and entry.names == ("tau",)

    def test_uncovered_entries(self):
        entry = cohomology(SpectrumId(3, 0), 3)
        assert entry.group == Z2 and entry.names == ("W3u",)

    def test_degree_five_vanishes_everywhere(self):
        for d in (2, 3, 4):
            for cover in (0, 1):
                assert cohomology(SpectrumId(d, cover), 5).group == FgAbGroup()

    def test_live_and_stored_uncovered_rows_agree(self):
        data = load_data()
        for d in (1, 2, 3, 4):
            for k in range(6):
                stored = data.entry(d, 0, k)
                live = thom_module_piece(d, k)
                assert stored.group == live.group, (d, k)
                assert stored.generators == live.generators, (d, k)

    def test_unsupported_cover(self):
        with pytest.raises(Unsupported):
            cohomology(SpectrumId(4, 2), 4)
        with pytest.raises(Unsupported):
            cohomology(SpectrumId(1, 1), 1)


class TestCoverMap:
    def test_recorded_examples(self):
        arrow = cover_map(4, 4)
        assert arrow.image_of("eu") == {"psi": 2, "sigma": -1}
        assert arrow.image_of("p1u") == {"sigma": 3}
        assert cover_map(3, 4).image_of("p1u") == {"rho": 6}
        assert cover_map(2, 2).image_of("cu") == {"tau": 2}

    def test_dimension_arrows(self):
        arrow = cover_map(4, 4, "dim")
        assert arrow.image_of("eu") == {}
        assert arrow.image_of("p1u") == {"p1u": 1}
        assert cover_map(3, 4, "dim").image_of("p1u") == {"c^2u": -1}

    def test_cover_arrows_between_covers(self):
        arrow = cover_map(4, 4, "covdim")
        assert arrow.image_of("psi") == {"rho": 1}
        assert arrow.image_of("sigma") == {"rho": 2}

    def test_not_recorded(self):
        with pytest.raises(NotRecorded):
            cover_map(4, 2)
        with pytest.raises(NotRecorded):
            cover_map(2, 3, "dim")

    def test_well_defined_group_homs(self):
        data = load_data()
        for record in data.arrows:
            if record.kind == "unit":
                continue
            arrow = cover_map(record.d, record.k, record.kind)
            arrow.to_group_hom()  # raises if the torsion is not respected

    def test_dim_arrows_match_ring_restriction(self):
        # the recorded dimension arrows must agree with the generator-level
        # restriction maps applied to the Thom module
        for d, k in ((4, 0), (4, 3), (4, 4), (3, 0), (3, 3), (3, 4)):
            arrow = cover_map(d, k, "dim")
            source = thom_module_piece(d, k)
            target = thom_module_piece(d - 1, k)
            for name, order in source.generators:
                core = "1" if name == "u" else name[:-1]
                elem = _from_monomial_name(d, core)
                image = restrict_generators(elem, d - 1)
                expected = {}
                for tgt_name, tgt_order in target.generators:
                    tgt_core = "1" if tgt_name == "u" else tgt_name[:-1]
                    coeff = _coefficient_of(image, d - 1, tgt_core)
                    if coeff:
                        expected[tgt_name] = coeff
                assert arrow.image_of(name) == expected, (d, k, name)


def _from_monomial_name(d, name):
    if name == "1":
        return RingElement.one(d)
    elem = RingElement.one(d)
    pos = 0
    while pos < len(name):
        for g in ("W3", "p1", "e", "c"):
            if name.startswith(g, pos):
                pos += len(g)
                power = 1
                if name.startswith("^", pos):
                    end = pos + 1
                    while end < len(name) and name[end].isdigit():
                        end += 1
                    power = int(name[pos + 1:end])
                    pos = end
                for _ in range(power):
                    elem = elem * RingElement.generator(d, g)
                break
        else:
            raise AssertionError(name)
    return elem


def _coefficient_of(elem, d, monomial_name):
    for mono, coeff in elem.terms:
        if mono.name() == monomial_name:
            return coeff
    return 0


class TestVerifyLes:
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_all_chunks_exact(self, d):
        report = verify_les(d)
        assert report.all_exact, report.describe()

    def test_degree_four_chunk_of_d4(self):
        report = verify_les(4)
        chunk = next(c for c in report.chunks
                     if c.groups == (FgAbGroup(2), FgAbGroup(2), FgAbGroup(0, (6,))))
        assert chunk.exact
        assert "eu,p1u" in chunk.description and "psi,sigma" in chunk.description

    def test_degree_two_chunk_of_d2(self):
        report = verify_les(2)
        chunk = next(c for c in report.chunks if c.groups == (Z, Z, Z2))
        assert chunk.exact
        assert "cu" in chunk.description and "tau" in chunk.description

    def test_cover_degree_five_vanishing_is_consistent(self):
        for d in (2, 3, 4):
            assert cohomology(SpectrumId(d, 1), 5).group == FgAbGroup()
            assert cohomology(SpectrumId(d, 0), 5).group == FgAbGroup()
            assert hz_self_cohomology(6) == FgAbGroup()


class TestGridEquivalence:
    def test_marked_equivalences(self):
        assert grid_equivalence(4, 1, 3)
        assert grid_equivalence(4, 1, 2)
        assert grid_equivalence(3, 1, 2)

    def test_non_equivalences(self):
        assert not grid_equivalence(2, 0, 1)  # degree-0 homotopy survives
        assert not grid_equivalence(4, 0, 1)
        assert not grid_equivalence(1, 0, 1)

    def test_out_of_table(self):
        with pytest.raises(OutOfTable):
            grid_equivalence(1, 2, 3)


class TestDerivation:
    def test_all_cover_entries_derive_uniquely(self):
        for d in (2, 3, 4):
            for k in range(6):
                result = derive_cover_cohomology(d, k, default_constraints(d, k))
                assert not result.ambiguous, (d, k)
                assert result.group == cohomology(SpectrumId(d, 1), k).group

    def test_divisibility_pins_degree_four_of_d3(self):
        result = derive_cover_cohomology(3, 4, default_constraints(3, 4))
        assert (result.group, result.ambiguous) == (Z, False)

    def test_hurewicz_pins_degree_two_of_d2(self):
        result = derive_cover_cohomology(2, 2, default_constraints(2, 2))
        assert (result.group, result.ambiguous) == (Z, False)

    def test_unconstrained_degree_four_of_d3_is_ambiguous(self):
        result = derive_cover_cohomology(3, 4, [])
        assert result.ambiguous
        assert result.candidates == frozenset({
            Z, FgAbGroup(1, (2,)), FgAbGroup(1, (3,)), FgAbGroup(1, (6,))})

    def test_underdetermined_without_constraints(self):
        result = derive_cover_cohomology(4, 2, [])
        assert result.ambiguous and result.candidates is None

    def test_vanishing_out_of_range_contradicts(self):
        with pytest.raises(ContradictoryConstraints):
            derive_cover_cohomology(
                3, 4, [DerivationConstraint.hurewicz_vanishing("misapplied")])

    def test_wrong_iso_group_contradicts(self):
        with pytest.raises(ContradictoryConstraints):
            derive_cover_cohomology(2, 2, [
                DerivationConstraint.hurewicz_iso(2, FgAbGroup(2), "wrong"),
                DerivationConstraint.universal_coefficients("dual"),
            ])


class TestCommutingSquare:
    def test_generator_chases_agree(self):
        top = cover_map(4, 4, "cover").to_group_hom()          # eu,p1u -> psi,sigma
        right = cover_map(4, 4, "covdim").to_group_hom()       # psi,sigma -> rho
        left = cover_map(4, 4, "dim").to_group_hom()           # eu,p1u -> p1u
        bottom = cover_map(3, 4, "cover").to_group_hom()       # p1u -> rho
        via_cover = compose_homs(right, top)
        via_dimension = compose_homs(bottom, left)
        assert via_cover.matrix.entries == via_dimension.matrix.entries
        # p1u: 3*sigma -> 6*rho equals p1u -> p1u -> 6*rho
        src = cohomology(SpectrumId(4, 0), 4)
        p1u_index = src.names.index("p1u")
        assert via_cover.matrix.col_list(p1u_index) == [6]
        # eu: (2*psi - sigma) -> 2*rho - 2*rho = 0 equals eu -> 0 -> 0
        eu_index = src.names.index("eu")
        assert via_cover.matrix.col_list(eu_index) == [0]


class TestSpectrumId:
    def test_display(self):
        assert SpectrumId(4, 1).display() == "p≥1Σ⁴MTSO(4)"
        assert SpectrumId(4, 1).display(ascii_mode=True) == "p>=1 Sigma^4 MTSO(4)"
        assert SpectrumId(2).display() == "Σ²MTSO(2)"

    def test_validation(self):
        with pytest.raises(ValueError):
            SpectrumId(5)
        with pytest.raises(ValueError):
            SpectrumId(2, 4)
