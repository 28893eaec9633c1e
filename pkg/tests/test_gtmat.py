import numpy as np
import pytest

from dilutedgt import ContactMatrix, DesignMeta, SparseSignal, load_matrix, save_matrix
from dilutedgt import gtmat


def test_paper_matrix_rows(paper_contact, tmp_path):
    path = tmp_path / "paper.gtmat"
    save_matrix(paper_contact, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "GTMAT v1 m=3 n=6 kind=explicit seed=none"
    assert lines[1:] == ["101010", "010101", "011011"]


def test_roundtrip_with_metadata(tmp_path):
    rng = np.random.default_rng(0)
    mc = ContactMatrix(rng.random((17, 9)) < 0.3, DesignMeta("bernoulli", (0.2, 0.05, 0.1), 2**63 + 5))
    path = tmp_path / "m.gtmat"
    save_matrix(mc, path)
    back = load_matrix(path)
    assert back == mc
    assert back.design_meta == mc.design_meta


def test_roundtrip_without_metadata():
    mc = ContactMatrix(np.eye(4, dtype=bool))
    assert "kind=none seed=none" in gtmat.dumps(mc)
    back = gtmat.loads(gtmat.dumps(mc))
    assert back == mc and back.design_meta is None


def test_ragged_row_names_line():
    text = "GTMAT v1 m=3 n=6 kind=none seed=none\n101010\n01010\n011011\n"
    with pytest.raises(gtmat.RaggedRow, match="line 3"):
        gtmat.loads(text)


def test_row_count_mismatch():
    with pytest.raises(gtmat.RaggedRow):
        gtmat.loads("GTMAT v1 m=3 n=2 kind=none seed=none\n10\n01\n")


def test_bad_character():
    with pytest.raises(gtmat.BadCharacter, match="line 2"):
        gtmat.loads("GTMAT v1 m=1 n=3 kind=none seed=none\n1x0\n")


@pytest.mark.parametrize(
    "header",
    [
        "GTMAT v2 m=1 n=1 kind=none seed=none",
        "GTMAT v1 m=1 kind=none seed=none",
        "GTMAT v1 m=0 n=1 kind=none seed=none",
        "GTMAT v1 m=1 n=1 kind=bad(( seed=none",
        "GTMAT v1 m=1 n=1 kind=ks(a,b) seed=none",
        "",
    ],
)
def test_malformed_header(header):
    with pytest.raises(gtmat.MalformedHeader):
        gtmat.loads(header + "\n1\n")


def test_error_kinds_are_distinct():
    kinds = {gtmat.MalformedHeader, gtmat.RaggedRow, gtmat.BadCharacter}
    assert len(kinds) == 3
    assert all(issubclass(k, gtmat.GTMATError) for k in kinds)


def test_signal_lines():
    x = SparseSignal.from_one_based(6, [4, 3])
    assert gtmat.format_signal(x) == "supp=3,4"
    assert gtmat.parse_signal("supp=3,4", 6) == x
    assert gtmat.parse_signal("supp=", 6).support == ()
    with pytest.raises(ValueError):
        gtmat.parse_signal("3,4", 6)
    with pytest.raises(ValueError):
        gtmat.parse_signal("supp=7", 6)


def test_outcome_strings():
    assert gtmat.parse_outcome("010").bits.tolist() == [False, True, False]
    with pytest.raises(ValueError):
        gtmat.parse_outcome("012")
