"""End-to-end CLI checks: formats, exit codes, reproducibility.

Usage: test_cli.py <path-to-assocmine-binary>
"""

import json
import os
import shutil
import subprocess
import sys
import tempfile

CLI = os.path.abspath(sys.argv[1]) if len(sys.argv) > 1 else "assocmine"


def run(args, cwd, expect=0):
    proc = subprocess.run([CLI] + args, cwd=cwd, capture_output=True, text=True)
    assert proc.returncode == expect, (
        f"{args} -> {proc.returncode} (wanted {expect})\n{proc.stderr}"
    )
    return proc


def read(path):
    with open(path, "rb") as fh:
        return fh.read()


def data_lines(path):
    """Non-comment lines of a report file."""
    out = []
    for line in read(path).decode().splitlines():
        if not line.startswith("#"):
            out.append(line)
    return out


def main():
    work = tempfile.mkdtemp(prefix="assocmine_cli_")
    try:
        gen = ["generate", "--n", "300", "--l", "2", "--mu", "0.8",
               "--theta", "0.2,0.63,0.63,0.2", "--density", "0.03",
               "--seed", "4", "--out-prefix", "g"]
        run(gen, work)
        for name in ("g.edges.tsv", "g.attrs.tsv", "g.config.json",
                     "g.manifest.json"):
            assert os.path.exists(os.path.join(work, name)), name
        config = json.load(open(os.path.join(work, "g.config.json")))
        assert config["n"] == 300 and config["l"] == 2
        assert abs(config["density"] - 0.03) / 0.03 < 0.3

        # stats: csv to stdout, json to a file
        proc = run(["stats", "--edges", "g.edges.tsv", "--attrs", "g.attrs.tsv"],
                   work)
        lines = [l for l in proc.stdout.splitlines() if not l.startswith("#")]
        assert lines[0] == "nodes,edges,density,attributes"
        nodes, edges, density, attr_count = lines[1].split(",")
        assert nodes == "300" and attr_count == "2"
        assert abs(float(density) - config["density"]) < 1e-12
        run(["stats", "--edges", "g.edges.tsv", "--attrs", "g.attrs.tsv",
             "--format", "json", "--out", "stats.json"], work)
        stats = json.loads(data_lines(os.path.join(work, "stats.json"))[0])
        assert stats["edges"] == int(edges)

        # mine twice (one multi-threaded), then the frequent baseline and diff
        mine = ["mine", "--edges", "g.edges.tsv", "--attrs", "g.attrs.tsv",
                "--alpha", "0.01", "--size-support", "0.01", "--seed", "0",
                "--out", "run.jsonl"]
        run(mine, work)
        associations = [json.loads(l) for l in
                        data_lines(os.path.join(work, "run.jsonl"))]
        for entry in associations:
            assert set(entry) == {"sig_a", "sig_b", "strength", "pvalue",
                                  "cluster_sizes", "cluster_ids"}
            assert entry["pvalue"] < 0.01
        pvalues = [e["pvalue"] for e in associations]
        assert pvalues == sorted(pvalues)

        clusters = data_lines(os.path.join(work, "run.clusters.csv"))
        assert clusters[0] == "cluster_id,size,signature"
        total = sum(int(row.split(",")[1]) for row in clusters[1:])
        assert total == 300  # clusters partition the nodes

        ancestry = data_lines(os.path.join(work, "run.ancestry.csv"))
        assert ancestry[0] == "child_id,parent_id"

        sub = os.path.join(work, "threads2")
        os.makedirs(sub)
        for name in ("g.edges.tsv", "g.attrs.tsv"):
            shutil.copy(os.path.join(work, name), os.path.join(sub, name))
        run(mine + ["--threads", "2"], sub)
        for name in ("run.jsonl", "run.clusters.csv", "run.ancestry.csv",
                     "run.log.jsonl"):
            assert read(os.path.join(work, name)) == read(os.path.join(sub, name)), (
                f"thread-count mismatch in {name}"
            )

        run(["frequent", "--edges", "g.edges.tsv", "--attrs", "g.attrs.tsv",
             "--freq-support", "0.001", "--out", "freq.csv"], work)
        freq_rows = data_lines(os.path.join(work, "freq.csv"))
        assert freq_rows[0] == "side_a,side_b,frequency"
        counts = [int(r.rsplit(",", 1)[1]) for r in freq_rows[1:]]
        assert counts == sorted(counts, reverse=True)

        run(["diff", "--significant", "run.jsonl", "--frequent", "freq.csv",
             "--top-k", "3", "--out", "diff.jsonl"], work)
        flagged = [json.loads(l) for l in
                   data_lines(os.path.join(work, "diff.jsonl"))]
        assert len(flagged) == len(associations)
        assert all("matched" in e for e in flagged)

        # predict: future snapshot = base plus a few fresh pairs
        future = os.path.join(work, "future.tsv")
        with open(future, "w") as fh:
            fh.write(read(os.path.join(work, "g.edges.tsv")).decode())
            base = {tuple(sorted(l.split("\t")))
                    for l in data_lines(os.path.join(work, "g.edges.tsv"))}
            added = 0
            for i in range(0, 200):
                pair = (f"n{i}", f"n{i + 1}")
                if tuple(sorted(pair)) not in base and added < 12:
                    fh.write(f"{pair[0]}\t{pair[1]}\n")
                    added += 1
            assert added == 12
        run(["predict", "--base", "g.edges.tsv", "--future", "future.tsv",
             "--attrs", "g.attrs.tsv", "--mode", "significant", "--tau", "0.5",
             "--seed", "0", "--neg-ratio", "5", "--out", "roc.csv"], work)
        roc_rows = data_lines(os.path.join(work, "roc.csv"))
        assert roc_rows[0] == "fpr,tpr"
        assert roc_rows[1] == "0,0" and roc_rows[-1] == "1,1"
        auc_line = [l for l in read(os.path.join(work, "roc.csv")).decode()
                    .splitlines() if l.startswith("# auc = ")]
        assert len(auc_line) == 1
        auc = float(auc_line[0].split("=")[1])
        assert 0.0 <= auc <= 1.0

        # every output starts with the manifest reference
        for name in ("run.jsonl", "freq.csv", "diff.jsonl", "roc.csv",
                     "g.edges.tsv"):
            first = read(os.path.join(work, name)).decode().splitlines()[0]
            assert first.startswith("# manifest: "), name

        # wildcard-aware matching inside diff
        with open(os.path.join(work, "wild.jsonl"), "w") as fh:
            fh.write(json.dumps({"sig_a": ["ICML", "ICDM", "SnP(*)"],
                                 "sig_b": ["ICML", "ICDM"], "strength": 5,
                                 "pvalue": 0.001, "cluster_sizes": [10, 10],
                                 "cluster_ids": [1, 2]}) + "\n")
            fh.write(json.dumps({"sig_a": ["FOCS"], "sig_b": ["CCS"],
                                 "strength": 4, "pvalue": 0.002,
                                 "cluster_sizes": [8, 8],
                                 "cluster_ids": [3, 4]}) + "\n")
        with open(os.path.join(work, "wildfreq.csv"), "w") as fh:
            fh.write("side_a,side_b,frequency\n")
            fh.write("ICML|ICDM|SnP,ICML|ICDM,9\n")
        run(["diff", "--significant", "wild.jsonl", "--frequent", "wildfreq.csv",
             "--top-k", "15", "--out", "wilddiff.jsonl"], work)
        wild = [json.loads(l) for l in
                data_lines(os.path.join(work, "wilddiff.jsonl"))]
        assert wild[0]["matched"] is True     # wildcard absorbs the SnP column
        assert wild[1]["matched"] is False

        # exit codes: usage errors 1, data errors 2
        run(["mine", "--edges", "g.edges.tsv", "--attrs", "g.attrs.tsv",
             "--alpha", "1.5", "--out", "x.jsonl"], work, expect=1)
        run(["nosuchcommand"], work, expect=1)
        run(["mine", "--edges", "missing.tsv", "--attrs", "g.attrs.tsv",
             "--out", "x.jsonl"], work, expect=2)
        bad = os.path.join(work, "bad.tsv")
        with open(bad, "w") as fh:
            fh.write("n0\tn0\n")
        run(["stats", "--edges", "bad.tsv", "--attrs", "g.attrs.tsv"], work,
            expect=2)

        print("cli pipeline tests passed")
        return 0
    finally:
        shutil.rmtree(work, ignore_errors=True)


if __name__ == "__main__":
    sys.exit(main())
