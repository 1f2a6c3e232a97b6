import random

import pytest

from conftest import petersen_paper
from superlinear.cli import main, run_bench, run_fuzz
from superlinear.coloring import ListAssignment
from superlinear.errors import ContractError
from superlinear.instances import (
    Instance,
    format_coloring,
    format_instance,
    parse_coloring,
    parse_instance,
    random_lists,
    random_subcubic,
)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def gen(tmp_path, name, *args):
    out = str(tmp_path / name)
    assert main(["gen", *args, "--out", out]) == 0
    return out


def test_color_petersen_and_verify_output(tmp_path, capsys):
    inst = gen(tmp_path, "p.txt", "petersen")
    out = str(tmp_path / "p.col")
    assert main(["color", inst, "--out", out, "--report", "--check"]) == 0
    assert "petersen_fast_path=1" in capsys.readouterr().err
    assert main(["verify", inst, out]) == 0
    assert capsys.readouterr().out == "ok\n"


def test_color_c5_is_infeasible_with_certificate(tmp_path, capsys):
    inst = gen(tmp_path, "c5.txt", "c5")
    assert main(["color", inst]) == 2
    out = capsys.readouterr().out
    assert out == "infeasible component=0 1 2 3 4 reason=c5-identical-lists\n"


def test_color_planted_c5_beside_a_graph(tmp_path, capsys):
    rng = random.Random(1)
    g = random_subcubic(30, rng)
    from superlinear.instances import cycle, disjoint_union

    h = disjoint_union(g, cycle(5))
    lists = list(random_lists(30, rng).lists) + [(0, 1, 2, 3)] * 5
    inst = write(tmp_path, "mix.txt", format_instance(Instance(h, ListAssignment(lists))))
    assert main(["color", inst]) == 2
    assert "component=30 31 32 33 34" in capsys.readouterr().out


def test_bad_header_is_a_usage_error(tmp_path, capsys):
    inst = write(tmp_path, "bad.txt", "p graph 1 0 8\nl 0 1 2 3 4\n")
    assert main(["color", inst]) == 1
    assert "error:" in capsys.readouterr().err


def test_usage_errors_map_to_one(tmp_path):
    assert main([]) == 1
    assert main(["color"]) == 1
    assert main(["color", str(tmp_path / "missing.txt")]) == 1
    assert main(["gen", "nonsense"]) == 1
    assert main(["gen", "cycle"]) == 1
    assert main(["gen", "cycle", "x"]) == 1
    assert main(["gen", "c5", "--lists", "weird"]) == 1


def test_verify_published_petersen_coloring(tmp_path, capsys):
    g, _, f = petersen_paper()
    inst = write(tmp_path, "p.txt", format_instance(Instance(g, ListAssignment.identical(10))))
    col = write(tmp_path, "p.col", format_coloring(f))
    assert main(["verify", inst, col]) == 0
    assert capsys.readouterr().out == "ok\n"


def test_verify_reports_bicolored_four_cycle(tmp_path, capsys):
    inst = gen(tmp_path, "c4.txt", "cycle", "4")
    col = write(tmp_path, "c4.col", format_coloring([1, 2, 1, 2]))
    assert main(["verify", inst, col]) == 3
    out = capsys.readouterr().out
    assert out.startswith("invalid bicolored-cycle")
    assert all(str(v) in out for v in range(4))


def test_verify_missing_color_is_a_parse_error(tmp_path):
    inst = gen(tmp_path, "c4.txt", "cycle", "4")
    col = write(tmp_path, "c4.col", "c 0 1\nc 1 2\nc 2 3\n")
    assert main(["verify", inst, col]) == 1


def test_oracle_command(tmp_path, capsys):
    inst = gen(tmp_path, "k33.txt", "k33")
    assert main(["oracle", inst]) == 2
    assert capsys.readouterr().out == "infeasible\n"
    assert main(["oracle", inst, "--count"]) == 0
    assert capsys.readouterr().out == "0\n"
    inst = gen(tmp_path, "c6.txt", "cycle", "6")
    out = str(tmp_path / "c6.col")
    assert main(["oracle", inst, "--out", out]) == 0
    assert main(["verify", inst, out]) == 0
    big = gen(tmp_path, "big.txt", "random-cubic", "20", "1")
    assert main(["oracle", big]) == 1


def test_gen_families_and_list_modes(tmp_path):
    for args, n in [
        (["petersen"], 10),
        (["k23"], 5),
        (["prism"], 6),
        (["cycle", "7"], 7),
        (["random-subcubic", "40", "seed=3"], 40),
        (["random-cubic", "50", "3", "--lists", "random", "9"], 50),
        (["planted", "eyeglass", "12", "5"], 18),
    ]:
        path = gen(tmp_path, "g.txt", *args)
        text = open(path).read()
        assert text.startswith("# " + args[0])
        assert parse_instance(text).graph.n == n
    a = gen(tmp_path, "a.txt", "random-cubic", "30", "4", "--lists", "random", "2")
    b = gen(tmp_path, "b.txt", "random-cubic", "30", "4", "--lists", "file", a)
    assert parse_instance(open(a).read()) == parse_instance(open(b).read())


def test_gen_good_cycle_exercises_its_branch(tmp_path, capsys):
    inst = gen(tmp_path, "gc.txt", "good-cycle", "minus", "1")
    assert main(["color", inst, "--report", "--check"]) == 0
    assert "branch.good-cycle:minus=1" in capsys.readouterr().err


def test_color_writes_trace(tmp_path):
    inst = gen(tmp_path, "r.txt", "random-cubic", "40", "2", "--lists", "random", "2")
    trace = tmp_path / "t.txt"
    assert main(["color", inst, "--trace", str(trace), "--out", str(tmp_path / "c")]) == 0
    lines = trace.read_text().splitlines()
    assert lines and all(line.startswith("step=") for line in lines)


def test_end_to_end_color_then_verify(tmp_path):
    rng = random.Random(12)
    for i in range(10):
        g = random_subcubic(rng.randint(20, 120), rng)
        L = random_lists(g.n, rng, palette=rng.choice([4, 6, 8]))
        inst = write(tmp_path, f"i{i}.txt", format_instance(Instance(g, L)))
        out = str(tmp_path / f"i{i}.col")
        code = main(["color", inst, "--out", out])
        if code == 0:
            parse_coloring(open(out).read(), g.n)
            assert main(["verify", inst, out]) == 0
        else:
            assert code == 2


def test_fuzz_small_run_is_clean_and_reproducible(tmp_path, capsys):
    a = run_fuzz(60, max_n=9, seed=5, out_dir=str(tmp_path))
    b = run_fuzz(60, max_n=9, seed=5)
    assert a.discrepancies == 0 and a.fallbacks == 0
    assert a.digest == b.digest and a.oracle_checks > 0
    assert run_fuzz(60, max_n=9, seed=6).digest != a.digest
    assert main(["fuzz", "--n", "9", "--iters", "30", "--seed", "5",
                 "--out-dir", str(tmp_path)]) == 0  # fmt: skip
    assert "discrepancies=0" in capsys.readouterr().out
    assert not list(tmp_path.iterdir())


def test_fuzz_require_coverage_fails_on_tiny_runs(tmp_path):
    assert main(["fuzz", "--n", "9", "--iters", "5", "--require-coverage",
                 "--out-dir", str(tmp_path)]) == 3  # fmt: skip


def test_bench_rejects_empty_sizes():
    assert main(["bench", "--sizes", ""]) == 1
    assert main(["bench", "--sizes", "a,b"]) == 1
    with pytest.raises(ContractError):
        run_bench([])


def test_bench_small_sizes_with_plot(tmp_path, capsys):
    png = tmp_path / "b.png"
    assert main(["bench", "--sizes", "200,400", "--repeats", "2", "--plot", str(png)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "--- bench" and out[-1] == "--- end"
    assert out[1].split("\t")[0] == "n" and len(out) == 5
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
