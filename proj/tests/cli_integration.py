#!/usr/bin/env python3
"""End-to-end checks of the stego CLI: round trips, byte-exact determinism,
file headers, and the documented exit codes."""
import os
import struct
import subprocess
import sys
import tempfile

STEGO = sys.argv[1] if len(sys.argv) > 1 else "build/tools/stego"
failures = 0


def run(*args, expect=0, **kw):
    global failures
    proc = subprocess.run([STEGO, *args], capture_output=True, **kw)
    if proc.returncode != expect:
        failures += 1
        print(f"FAIL rc={proc.returncode} (want {expect}): stego {' '.join(args)}")
        print(proc.stderr.decode(errors="replace")[-500:])
    return proc


def check(name, cond):
    global failures
    if not cond:
        failures += 1
    print(f"{'ok' if cond else 'FAIL'}: {name}")


with tempfile.TemporaryDirectory() as tmp:
    os.chdir(tmp)

    # models
    run("make-model", "--tables", "40,10,50;25,25,50;50,25,25", "--out", "sched.smm")
    run("make-model", "--tables", "40,10,50", "--out", "tern.smm")

    with open("msg.bin", "wb") as f:
        f.write(b"the quick brown fox jumps over the lazy dog")

    # paper-mode round trip, both engines, byte-identical determinism
    for engine in ("fixed", "exact"):
        run("embed", "--model", "tern.smm", "--in", "msg.bin", "--out", f"a_{engine}.stg",
            "--engine", engine)
        run("embed", "--model", "tern.smm", "--in", "msg.bin", "--out", f"b_{engine}.stg",
            "--engine", engine)
        check(f"{engine} embed is deterministic",
              open(f"a_{engine}.stg", "rb").read() == open(f"b_{engine}.stg", "rb").read())
        run("extract", "--model", "tern.smm", "--in", f"a_{engine}.stg", "--out", f"back_{engine}.bin")
        check(f"{engine} round trip", open(f"back_{engine}.bin", "rb").read() == open("msg.bin", "rb").read())

    # stego header carries the magic
    check("stego magic", open("a_fixed.stg", "rb").read(4) == b"STG1")

    # prg mode: fixed-length output, empty message = pure model sampling
    open("empty.bin", "wb").close()
    run("embed", "--model", "tern.smm", "--in", "empty.bin", "--out", "empty.stg",
        "--mode", "prg", "--n-target", "100", "--key", "k")
    stg = open("empty.stg", "rb").read()
    n_symbols = struct.unpack("<Q", stg[19:27])[0]  # magic4 ver4 mode1 engine1 flags1 L4 alpha4
    check("prg empty message emits exactly n-target symbols", n_symbols == 100)
    run("extract", "--model", "tern.smm", "--in", "empty.stg", "--out", "empty_back.bin")
    check("prg empty round trip", open("empty_back.bin", "rb").read() == b"")

    run("embed", "--model", "tern.smm", "--in", "msg.bin", "--out", "prg.stg",
        "--mode", "prg", "--n-target", "400", "--key", "k")
    run("extract", "--model", "tern.smm", "--in", "prg.stg", "--out", "prg_back.bin")
    check("prg round trip", open("prg_back.bin", "rb").read() == open("msg.bin", "rb").read())

    # whitened embedding needs the key on both ends
    run("embed", "--model", "tern.smm", "--in", "msg.bin", "--out", "white.stg",
        "--key", "secret", "--whiten")
    run("extract", "--model", "tern.smm", "--in", "white.stg", "--out", "white_back.bin",
        "--key", "secret")
    check("whitened round trip", open("white_back.bin", "rb").read() == open("msg.bin", "rb").read())
    run("extract", "--model", "tern.smm", "--in", "white.stg", "--out", "wrong.bin",
        "--key", "other", expect=5)  # header parse fails on the mis-whitened bits

    # train on a sizeable corpus, order 2, then a 1 KiB random round trip
    with open("corpus.bin", "wb") as f:
        f.write(os.urandom(1 << 20))
    run("train", "--corpus", "corpus.bin", "--order", "2", "--alphabet", "32", "--out", "markov.smm")
    with open("kib.bin", "wb") as f:
        f.write(os.urandom(1024))
    run("embed", "--model", "markov.smm", "--in", "kib.bin", "--out", "kib.stg")
    run("extract", "--model", "markov.smm", "--in", "kib.stg", "--out", "kib_back.bin")
    check("1 KiB trained-model round trip", open("kib_back.bin", "rb").read() == open("kib.bin", "rb").read())

    # model round-trips through its file format: retrain produces the same file
    run("train", "--corpus", "corpus.bin", "--order", "2", "--alphabet", "32", "--out", "markov2.smm")
    check("training is deterministic", open("markov.smm", "rb").read() == open("markov2.smm", "rb").read())

    # modulate / demodulate
    run("modulate", "--in", "msg.bin", "--payload", "1", "--out", "p1.ltv", "--seed", "11")
    run("modulate", "--in", "msg.bin", "--payload", "4", "--out", "p4.ltv", "--seed", "11")
    run("demodulate", "--in", "p4.ltv", "--out", "p4_back.bin")
    check("latent round trip", open("p4_back.bin", "rb").read() == open("msg.bin", "rb").read())
    check("latent magic", open("p4.ltv", "rb").read(4) == b"LTV1")
    # single zero bit -> negative coordinate (cell 0 of the sign split)
    with open("zero.bin", "wb") as f:
        f.write(bytes([0x00]))
    run("modulate", "--in", "zero.bin", "--payload", "1", "--out", "zero.ltv", "--seed", "1")
    coords = open("zero.ltv", "rb").read()
    first = struct.unpack("<d", coords[-8 * 8:-7 * 8])[0]
    check("zero bit maps below zero", first < 0)
    run("modulate", "--in", "msg.bin", "--payload", "4", "--out", "p4b.ltv", "--seed", "11")
    check("modulate is seed-deterministic", open("p4.ltv", "rb").read() == open("p4b.ltv", "rb").read())

    # a 1 KiB message at payload 4 becomes 2048 + 8 header-free coordinates
    with open("kib2.bin", "wb") as f:
        f.write(os.urandom(1024))
    run("modulate", "--in", "kib2.bin", "--payload", "4", "--out", "kib2.ltv", "--seed", "4")
    n_coords = struct.unpack("<Q", open("kib2.ltv", "rb").read()[20:28])[0]
    check("1 KiB at p=4 gives 2048 coordinates", n_coords == 2048)
    run("demodulate", "--in", "kib2.ltv", "--out", "kib2_back.bin")
    check("1 KiB latent round trip", open("kib2_back.bin", "rb").read() == open("kib2.bin", "rb").read())

    # verify wrappers
    out = run("verify", "--model", "tern.smm", "--check", "kl", "--lengths", "6,8",
              "--seed", "1").stdout.decode()
    check("kl verify passes", "PASS" in out)
    out = run("verify", "--model", "sched.smm", "--check", "kl", "--lengths", "2",
              "--mode", "prg", "--prg-n", "3", "--seed", "1").stdout.decode()
    check("prg verify reports zero divergence", "kl=0 " in out and "PASS" in out)
    run("make-model", "--tables", "1,1", "--out", "uni.smm")
    out = run("verify", "--model", "uni.smm", "--check", "kl", "--lengths", "2,4,6",
              "--seed", "1").stdout.decode()
    check("uniform binary kl is exactly zero", out.count("kl=0 ") == 3 and "PASS" in out)

    # exit codes
    run("embed", "--model", "missing.smm", "--in", "msg.bin", "--out", "x.stg", expect=3)
    run("embed", "--model", "tern.smm", "--in", "msg.bin", "--out", "x.stg",
        "--mode", "prg", expect=2)  # n-target missing
    run("bogus-subcommand", expect=2)
    # entropy exhausted: 3-table schedule cannot carry a byte
    run("embed", "--model", "sched.smm", "--in", "msg.bin", "--out", "x.stg", expect=4)

    # corrupt stego: flip a body byte -> symbol out of alphabet -> format error
    data = bytearray(open("a_fixed.stg", "rb").read())
    data[-1] = 9
    open("bad.stg", "wb").write(bytes(data))
    run("extract", "--model", "tern.smm", "--in", "bad.stg", "--out", "y.bin", expect=5)

    # truncated stego: drop trailing symbols and fix the count -> ambiguous
    full = bytearray(open("a_fixed.stg", "rb").read())
    count = struct.unpack("<Q", full[19:27])[0]
    full[19:27] = struct.pack("<Q", count - 4)
    open("trunc.stg", "wb").write(bytes(full[:-4]))
    run("extract", "--model", "tern.smm", "--in", "trunc.stg", "--out", "z.bin", expect=7)

    # digest mismatch: extract against a different model file
    run("extract", "--model", "markov.smm", "--in", "a_fixed.stg", "--out", "w.bin", expect=6)

    # state-space guard
    run("verify", "--model", "tern.smm", "--check", "kl", "--lengths", "24", "--seed", "1", expect=8)

print(f"{failures} failure(s)")
sys.exit(1 if failures else 0)
