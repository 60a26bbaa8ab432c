import json
import subprocess
import sys

import pytest

from bottsamelson.cli import main

JOB = {"generators": ["s1", "s2"], "coxeter_matrix": [[1, 3], [3, 1]],
          "word": ["s1", "s2", "s1", "s2"], "backend": "rational"}


def write(tmp_path, doc, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_present_alternating_word(tmp_path, capsys):
    code, out, _ = run(capsys, "present", "--input", write(tmp_path, JOB))
    assert code == 0
    d = json.loads(out)
    assert "x4^2 - 3/8 x1x2 + 3/8 x1x3 + 3/4 x2x3" in d["reduced_relations"]
    assert d["m_matrix"][0] == [1, 3, 1, 3]
    assert d["q"][0][3] == "-3/8"


def test_present_is_byte_stable(tmp_path, capsys):
    path = write(tmp_path, JOB)
    for fmt in ("json", "csv", "text"):
        a = run(capsys, "present", "--input", path, "--format", fmt)[1]
        b = run(capsys, "present", "--input", path, "--format", fmt)[1]
        assert a == b and a


def test_present_empty_word(tmp_path, capsys):
    code, out, _ = run(capsys, "present", "--input", write(tmp_path, JOB), "--word", "",
                       "--format", "text")
    assert code == 0 and "trivial ring" in out


def test_present_generic_length_three(tmp_path, capsys):
    doc = {"generators": ["a", "b", "c"], "coxeter_matrix": [[1, 5, 4], [5, 1, 6], [4, 6, 1]],
            "word": ["a", "b", "c"], "backend": "float", "precision_bits": 80}
    code, out, _ = run(capsys, "present", "--input", write(tmp_path, doc))
    assert code == 0
    d = json.loads(out)
    import math
    r12, r13, r23 = (math.cos(math.pi / m) for m in (5, 4, 6))
    (i, j, c), = d["reduced"][2]
    assert (i, j) == (1, 2)
    assert abs(float(c) - 2 * (r13 * r23 + r12 * r23 ** 2)) < 1e-12
    assert d["precision_bits"] == 80


def test_text_uses_relation_notation(tmp_path, capsys):
    doc = dict(JOB, word=["s1", "s1", "s2", "s1"])
    _, out, _ = run(capsys, "present", "--input", write(tmp_path, doc), "--format", "text")
    assert "q'_4 = x4^2 + 3/4 x2x3" in out.splitlines()


@pytest.mark.parametrize("which", ["pd", "gb", "oracle", "hl", "hr", "all"])
def test_verify_length_four_words(tmp_path, capsys, which):
    path = write(tmp_path, JOB)
    for w in ("s1,s2,s1,s2", "s1,s1,s2,s1"):
        code, out, _ = run(capsys, "verify", which, "--input", path, "--word", w)
        assert code == 0, out
        assert json.loads(out)["verdict"] == "pass"


def test_verify_hr_with_explicit_vector(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "hr", "--input", write(tmp_path, JOB), "--c", "1,1,1,1")
    assert code == 0
    d = json.loads(out)["results"][0]
    assert d["c"] == ["1/1"] * 4
    assert [row["hr_signature"] for row in d["degrees"]] == [[1, 0, 0], [0, 3, 0], [2, 0, 0]]


def test_verify_hr_violation_exits_one(tmp_path, capsys):
    doc = {"generators": ["s1", "s2", "s3"],
            "coxeter_matrix": [[1, 2, 3], [2, 1, "inf"], [3, "inf", 1]],
            "word": ["s1", "s2", "s3", "s2", "s2"]}
    code, out, err = run(capsys, "verify", "hr", "--input", write(tmp_path, doc), "--c", "1,1,1,1,1")
    assert code == 1
    bad = json.loads(out)["results"][0]["degrees"][2]
    assert bad["verdict"] == "fail" and bad["gram_witness"]
    assert "fail" in err


def test_verify_inconclusive_exits_three(tmp_path, capsys):
    doc = {"coxeter_matrix": [[1, 2, 2], [2, 1, 2], [2, 2, 1]], "word": ["s1", "s2", "s3"],
            "backend": "float", "tolerance": 1e-3}
    code, _, _ = run(capsys, "verify", "hl", "--input", write(tmp_path, doc), "--c", "0.02,0.02,0.02")
    assert code == 3


def test_find_ample(tmp_path, capsys):
    code, out, _ = run(capsys, "find-ample", "--input", write(tmp_path, JOB))
    assert code == 0
    d = json.loads(out)
    assert len(d["c"]) == 4 and d["report"]["verdict"] == "pass"


def test_input_errors_exit_two(tmp_path, capsys):
    bad = dict(JOB, coxeter_matrix=[[1, 5], [5, 1]])
    code, _, err = run(capsys, "present", "--input", write(tmp_path, bad))
    assert code == 2 and "rational" in err
    assert run(capsys, "present", "--input", write(tmp_path, bad), "--backend", "float")[0] == 0
    assert run(capsys, "present", "--input", str(tmp_path / "missing.json"))[0] == 2
    (tmp_path / "broken.json").write_text("{")
    assert run(capsys, "present", "--input", str(tmp_path / "broken.json"))[0] == 2
    assert run(capsys, "present", "--input", write(tmp_path, JOB), "--word", "s1,s9")[0] == 2
    assert run(capsys, "present")[0] == 2
    asym = dict(JOB, coxeter_matrix=[[1, 3], [4, 1]])
    assert run(capsys, "present", "--input", write(tmp_path, asym))[0] == 2
    assert run(capsys, "verify", "hr", "--input", write(tmp_path, JOB), "--c", "1,0,1,1")[0] == 2
    assert run(capsys, "verify", "hr", "--input", write(tmp_path, JOB), "--c", "1,1")[0] == 2
    assert run(capsys, "verify", "bogus")[0] == 2
    assert run(capsys, "random-suite", "--count", "-1")[0] == 2


def test_random_suite(capsys):
    code, out, _ = run(capsys, "random-suite", "--seed", "1", "--count", "20", "--max-len", "6")
    assert code == 0
    d = json.loads(out)
    assert len(d["items"]) == 20 and d["verdict"] == "pass"
    again = run(capsys, "random-suite", "--seed", "1", "--count", "20", "--max-len", "6")[1]
    assert again == out
    assert run(capsys, "random-suite", "--count", "0")[0] == 0


def test_random_suite_length_one(capsys):
    code, out, _ = run(capsys, "random-suite", "--seed", "4", "--count", "8", "--max-len", "1",
                       "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "index,word,backend,check,verdict"
    assert all(line.endswith("pass") for line in lines[1:])


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "bottsamelson", "present", "--input",
                          write(tmp_path, JOB), "--format", "text"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "q'_3 = x3^2 + 3/4 x1x2" in out.stdout
