from __future__ import annotations

from pathlib import Path
from typing import Dict

import pytest

import gsco_splice.cli as cli
from corpus import spelled
from gsco_splice.text_formats import read_automaton


@pytest.fixture(autouse=True)
def _isolated_cwd(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.chdir(tmp_path)


def _run(config_path: Path, *args: str) -> int:
    return cli.main(["--config", str(config_path), *args])


def test_cross_prints_words(config_path: Path, word_files: Dict[str, Path], capsys) -> None:
    code = _run(config_path, "cross", f"words:{word_files['ab']}", f"words:{word_files['ba']}", "--max-len", "4")
    assert code == cli.EXIT_OK
    assert capsys.readouterr().out == "a\nb\naba\nbab\n"


def test_cross_one_direction_with_report(config_path: Path, word_files: Dict[str, Path], capsys) -> None:
    code = _run(
        config_path,
        "cross",
        f"words:{word_files['ab']}",
        f"words:{word_files['ba']}",
        "--direction",
        "one",
        "--max-len",
        "4",
        "--report",
    )
    captured = capsys.readouterr()
    assert code == cli.EXIT_OK
    assert captured.out == "a\naba\n"
    assert captured.err.splitlines()[-1] == "total bridges: 4"


def test_cross_writes_automaton_file(config_path: Path, word_files: Dict[str, Path], tmp_path: Path, capsys) -> None:
    out = tmp_path / "crossed.aut"
    code = _run(config_path, "cross", f"words:{word_files['ab']}", f"words:{word_files['ba']}", "--out", str(out))
    assert code == cli.EXIT_OK
    assert capsys.readouterr().out == ""
    assert spelled(read_automaton(out.read_text(encoding="utf-8")), 4) == {"a", "b", "aba", "bab"}


def test_cross_without_output_flags_prints_automaton(config_path: Path, capsys) -> None:
    assert _run(config_path, "cross", "re:a", "re:b") == cli.EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("alphabet: a b\nstates: 1\n")


def test_closure_with_rule_file(config_path: Path, data_dir: Path, word_files: Dict[str, Path], capsys) -> None:
    code = _run(
        config_path, "closure", f"words:{word_files['abba']}", "--rule-file", str(data_dir / "ab.rules"), "--max-len", "3"
    )
    assert code == cli.EXIT_OK
    assert capsys.readouterr().out == "a\nb\nab\nba\naba\nbab\n"


def test_star_pair_base_flag(config_path: Path, capsys) -> None:
    assert _run(config_path, "star-pair", "re:ab", "re:cd", "--max-len", "4") == cli.EXIT_OK
    assert capsys.readouterr().out == "ab\ncd\n"
    assert _run(config_path, "star-pair", "re:ab", "re:cd", "--no-include-base", "--max-len", "4") == cli.EXIT_OK
    assert capsys.readouterr().out == ""


def test_splice(config_path: Path, capsys) -> None:
    code = _run(config_path, "splice", "re:a*b", "re:ba*", "--rules", "a", "--max-len", "4", "--minimize")
    assert code == cli.EXIT_OK
    assert capsys.readouterr().out == "a\naa\naaa\nbab\naaaa\nbaab\n"


def test_splice_rejects_all_rules(config_path: Path) -> None:
    assert _run(config_path, "splice", "re:ab", "re:ba", "--rules", "all") == cli.EXIT_SEMANTIC


def test_member(config_path: Path, capsys) -> None:
    assert _run(config_path, "member", "re:a*b", "aab") == cli.EXIT_OK
    assert capsys.readouterr().out == "ACCEPT\n"
    assert _run(config_path, "member", "re:a*b", "@eps") == cli.EXIT_OK
    assert capsys.readouterr().out == "REJECT\n"


def test_enum_uses_configured_length(config_path: Path, capsys) -> None:
    assert _run(config_path, "enum", "re:ab*") == cli.EXIT_OK
    assert capsys.readouterr().out == "a\nab\nabb\nabbb\n"
    assert _run(config_path, "enum", "re:ab*", "--max-len", "2") == cli.EXIT_OK
    assert capsys.readouterr().out == "a\nab\n"


def test_eqv(config_path: Path, capsys) -> None:
    assert _run(config_path, "eqv", "re:a*b", "re:aa*b|b") == cli.EXIT_OK
    assert capsys.readouterr().out == "EQUIVALENT\n"
    assert _run(config_path, "eqv", "re:a*b", "re:aa*b") == cli.EXIT_DIFFER
    assert capsys.readouterr().out == "DIFFER b\n"


def test_min_writes_canonical_automaton(config_path: Path, tmp_path: Path) -> None:
    first, second = tmp_path / "first.aut", tmp_path / "second.aut"
    assert _run(config_path, "min", "re:a*b", "--out", str(first)) == cli.EXIT_OK
    assert _run(config_path, "min", "re:aa*b|b", "--out", str(second)) == cli.EXIT_OK
    assert first.read_text(encoding="utf-8") == second.read_text(encoding="utf-8")


def test_oracle_closure_and_pair(config_path: Path, word_files: Dict[str, Path], capsys) -> None:
    code = _run(config_path, "oracle", "closure", f"words:{word_files['abba']}", "--max-len", "4")
    assert code == cli.EXIT_OK
    assert capsys.readouterr().out.split() == ["a", "b", "ab", "ba", "aba", "bab", "abab", "baba"]
    code = _run(
        config_path, "oracle", "pair", f"words:{word_files['ab']}", f"words:{word_files['ba']}", "--max-len", "4"
    )
    assert code == cli.EXIT_OK
    assert capsys.readouterr().out.split() == ["a", "b", "ab", "ba", "aba", "bab"]


def test_oracle_gs_and_arity(config_path: Path, word_files: Dict[str, Path], capsys) -> None:
    code = _run(
        config_path,
        "oracle",
        "gs",
        f"words:{word_files['ab']}",
        f"words:{word_files['ba']}",
        "--rules",
        "a",
        "--max-len",
        "4",
    )
    assert code == cli.EXIT_OK
    assert capsys.readouterr().out.split() == ["a", "ab", "ba", "bab"]
    assert _run(config_path, "oracle", "pair", f"words:{word_files['ab']}") == cli.EXIT_USAGE


def test_oracle_iteration_limit(config_path: Path, word_files: Dict[str, Path]) -> None:
    code = _run(config_path, "oracle", "closure", f"words:{word_files['abba']}", "--max-iter", "1")
    assert code == cli.EXIT_RESOURCE


@pytest.mark.parametrize(
    ("args", "expected"),
    [
        (["member", "re:a|", "a"], cli.EXIT_PARSE),
        (["member", "words:missing.words", "a"], cli.EXIT_USAGE),
        (["member", "a*b", "a"], cli.EXIT_USAGE),
        (["cross", "re:a", "re:a", "--rules", "a,,b"], cli.EXIT_SEMANTIC),
        (["enum", "re:(a|b)*", "--max-len", "20"], cli.EXIT_RESOURCE),
        (["frobnicate"], cli.EXIT_USAGE),
    ],
)
def test_exit_codes(config_path: Path, args, expected: int) -> None:
    assert _run(config_path, *args) == expected


def test_config_errors_exit_with_usage(tmp_path: Path) -> None:
    assert cli.main(["--config", str(tmp_path / "absent.yaml"), "enum", "re:a"]) == cli.EXIT_USAGE
    assert cli.main(["--profile", "desk", "enum", "re:a"]) == cli.EXIT_USAGE


def test_default_config_is_used_without_file(capsys) -> None:
    assert cli.main(["enum", "re:a"]) == cli.EXIT_OK
    assert capsys.readouterr().out == "a\n"


def test_unwritable_output_is_reported(config_path: Path, tmp_path: Path, caplog) -> None:
    code = _run(config_path, "cross", "re:a", "re:a", "--out", str(tmp_path / "no" / "dir.aut"))
    assert code == cli.EXIT_USAGE
    assert "File access failed" in caplog.text


def test_splice_equals_cross_of_closures_through_files(config_path: Path, tmp_path: Path, capsys) -> None:
    first, second = tmp_path / "first.aut", tmp_path / "second.aut"
    crossed, spliced = tmp_path / "crossed.aut", tmp_path / "spliced.aut"
    assert _run(config_path, "closure", "re:a*b", "--rules", "a", "--out", str(first)) == cli.EXIT_OK
    assert _run(config_path, "closure", "re:ba*", "--rules", "a", "--out", str(second)) == cli.EXIT_OK
    code = _run(config_path, "cross", f"auto:{first}", f"auto:{second}", "--rules", "a", "--out", str(crossed))
    assert code == cli.EXIT_OK
    assert _run(config_path, "splice", "re:a*b", "re:ba*", "--rules", "a", "--out", str(spliced)) == cli.EXIT_OK
    capsys.readouterr()
    assert _run(config_path, "eqv", f"auto:{crossed}", f"auto:{spliced}") == cli.EXIT_OK
    assert capsys.readouterr().out == "EQUIVALENT\n"


def test_repeated_runs_are_byte_identical(config_path: Path, tmp_path: Path, capsys) -> None:
    outputs = [tmp_path / "once.aut", tmp_path / "twice.aut"]
    for out in outputs:
        assert _run(config_path, "star-pair", "re:(ab)*", "re:ba*", "--rules", "a,b", "--out", str(out)) == cli.EXIT_OK
    assert outputs[0].read_bytes() == outputs[1].read_bytes()
    printed = []
    for _ in range(2):
        assert _run(config_path, "closure", "re:ab|ba", "--report") == cli.EXIT_OK
        printed.append(capsys.readouterr())
    assert printed[0] == printed[1]


def test_closure_of_alternating_pair_matches_hand_written_automaton(
    config_path: Path, data_dir: Path, tmp_path: Path, capsys
) -> None:
    closed = tmp_path / "closed.aut"
    assert _run(config_path, "closure", "re:ab|ba", "--rules", "all", "--out", str(closed)) == cli.EXIT_OK
    assert _run(config_path, "eqv", f"auto:{closed}", f"auto:{data_dir / 'alternating_words.aut'}") == cli.EXIT_OK
    assert capsys.readouterr().out == "EQUIVALENT\n"


def test_splice_result_file_matches_expected_language(config_path: Path, tmp_path: Path, capsys) -> None:
    spliced = tmp_path / "spliced.aut"
    assert _run(config_path, "splice", "re:a*b", "re:ba*", "--rules", "a", "--out", str(spliced)) == cli.EXIT_OK
    assert _run(config_path, "eqv", f"auto:{spliced}", "re:aa*|baa*b") == cli.EXIT_OK
    assert capsys.readouterr().out == "EQUIVALENT\n"
