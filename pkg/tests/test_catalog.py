import shutil

import pytest

from autzlab.catalog import (
    catalog_files,
    default_catalog_dir,
    load_catalog,
    load_entry,
    parse_metadata,
)
from autzlab.errors import AutzLabError
from autzlab.groups import center
from autzlab.invariants import derived_subgroup, nilpotency_class, rank

from .conftest import DATA

REQUIRED = {"c3", "c27", "c3xc3", "c9xc3", "heis27", "ext27_exp9", "maxclass81", "c9_sd_c9",
            "phi8_32", "phi7_243", "order729_gamma2_p4", "meta729"}


def test_shipped_catalog(catalog):
    names = [e.name for e in catalog]
    assert names == sorted(names)
    assert REQUIRED <= set(names)
    assert len(catalog) >= 8
    assert not catalog.errors
    assert [p.name for p in catalog.skipped] == ["heis125.pc"]
    for e in catalog:
        assert e.provenance.startswith(("transcribed", "derived")), e.name
        assert e.group.p == 3


def test_required_shapes(groups):
    """Smoke groups, both order-27 extraspecials, and the order-729 pair."""
    for name in ("heis27", "ext27_exp9"):
        G = groups[name]
        assert G.order == 27 and center(G) == derived_subgroup(G)
    assert groups["heis27"].element_orders().max() == 3
    assert groups["ext27_exp9"].element_orders().max() == 9
    G = groups["maxclass81"]
    assert nilpotency_class(G) == G.log_order - 1
    sat = groups["order729_gamma2_p4"]
    assert rank(sat) == 2 and center(sat).order == 3 and nilpotency_class(sat) in (3, 4)
    viol = groups["meta729"]
    assert nilpotency_class(viol) in (3, 4) and not (rank(viol) == 2 and center(viol).order == 3)


def test_include_p5():
    cat = load_catalog(include_p5=True)
    assert "heis125" in [e.name for e in cat] and not cat.skipped


def test_empty_directory(tmp_path):
    cat = load_catalog(tmp_path)
    assert len(cat) == 0 and not cat.errors


def test_missing_directory(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_catalog(tmp_path / "nope")


def test_corrupt_file_is_collected(tmp_path):
    shutil.copy(DATA / "corrupt" / "broken.pc", tmp_path)
    shutil.copy(default_catalog_dir() / "heis27.pc", tmp_path)
    cat = load_catalog(tmp_path)
    assert [e.name for e in cat] == ["heis27"]
    assert len(cat.errors) == 1 and cat.errors[0].path.name == "broken.pc"
    assert "InconsistentPresentation" in cat.errors[0].message


def test_metadata_mismatch_fails_loudly(tmp_path):
    text = (default_catalog_dir() / "heis27.pc").read_text().replace("#! expect center 3", "#! expect center 9")
    bad = tmp_path / "heis27.pc"
    bad.write_text(text)
    with pytest.raises(AutzLabError, match="center: expected 9, got 3"):
        load_entry(bad)


def test_parse_metadata():
    expected, source = parse_metadata("#! source derived: x y\n#! expect class 3\nname g\n")
    assert expected == {"class": 3} and source == "derived: x y"
    with pytest.raises(ValueError):
        parse_metadata("#! expect colour 3\n")
    with pytest.raises(ValueError):
        parse_metadata("#! frobnicate\n")


def test_catalog_files_sorted():
    files = catalog_files(default_catalog_dir())
    assert files == sorted(files)
