import pytest

from mtspec.certified import load_data, parse_data
from mtspec.errors import DataFormatError

MINIMAL = """\
version=1
cohomology d=2 cover=0 k=0 group=Z gens=u
"""


class TestShippedData:
    def test_loads_and_validates(self):
        data = load_data()
        assert data.version == 1
        assert len(data.cohomology) == 42  # seven rows, degrees 0..5
        assert len(data.arrows) == 20
        assert set(data.hz) == set(range(7))

    def test_every_arrow_cites_its_provenance(self):
        allowed = {"diagram", "names", "square", "forced", "unit"}
        for arrow in load_data().arrows:
            assert arrow.provenance in allowed

    def test_catalog_records(self):
        data = load_data()
        assert {"S1", "S2", "S4", "T4", "CP2", "K3"} <= set(data.manifolds)
        assert set(data.families) == {"Sigma_g", "S2xSigma_g"}


class TestParser:
    def test_minimal_document(self):
        data = parse_data(MINIMAL)
        assert data.entry(2, 0, 0).names == ("u",)

    def test_version_required(self):
        with pytest.raises(DataFormatError):
            parse_data("cohomology d=2 cover=0 k=0 group=Z gens=u\n")

    def test_unknown_record_rejected(self):
        with pytest.raises(DataFormatError):
            parse_data(MINIMAL + "mystery a=1\n")

    def test_generator_list_must_realize_group(self):
        with pytest.raises(DataFormatError):
            parse_data("version=1\ncohomology d=2 cover=0 k=0 group=Z gens=u,cu\n")

    def test_ill_defined_arrow_rejected(self):
        bad = (
            "version=1\n"
            "cohomology d=3 cover=0 k=3 group=Z/2 gens=W3u:2\n"
            "cohomology d=3 cover=1 k=3 group=Z gens=x\n"
            "arrow kind=cover d=3 k=3 prov=diagram map=W3u:1*x\n"
        )
        with pytest.raises(DataFormatError):
            parse_data(bad)

    def test_bad_combo_rejected(self):
        bad = (
            "version=1\n"
            "cohomology d=2 cover=0 k=0 group=Z gens=u\n"
            "cohomology d=2 cover=1 k=0 group=Z gens=t\n"
            "arrow kind=cover d=2 k=0 prov=diagram map=u:t+t\n"
        )
        with pytest.raises(DataFormatError):
            parse_data(bad)
