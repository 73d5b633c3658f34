use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_ckks");

fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn ckks(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn staged(files: &[&str]) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for f in files {
        fs::copy(golden().join(f), dir.path().join(f)).unwrap();
    }
    dir
}

fn toy_dir() -> tempfile::TempDir {
    staged(&[
        "toy.params",
        "message.txt",
        "keygen.samplers",
        "encrypt.samplers",
        "manifest.txt",
    ])
}

fn slots(text: &str) -> Vec<(f64, f64)> {
    text.lines()
        .map(|l| {
            let mut it = l.split_whitespace().map(|w| w.parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect()
}

#[test]
fn toy_pipeline_matches_goldens() {
    let dir = toy_dir();
    let out = ckks(
        dir.path(),
        &[
            "--params",
            "toy.params",
            "pipeline",
            "--manifest",
            "manifest.txt",
        ],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for (produced, expected) in [
        ("m.txt", "m.txt"),
        ("keys/pk.txt", "pk.txt"),
        ("ct.txt", "ct.txt"),
        ("decrypted.txt", "decrypted.txt"),
    ] {
        assert_eq!(
            fs::read(dir.path().join(produced)).unwrap(),
            fs::read(golden().join("expected").join(expected)).unwrap(),
            "{produced}"
        );
    }
    let decoded = slots(&fs::read_to_string(dir.path().join("decoded.txt")).unwrap());
    let want = [(2.96, 4.04), (2.03, -0.99)];
    for ((re, im), (wr, wi)) in decoded.iter().zip(want) {
        assert!((re - wr).abs() <= 0.02 && (im - wi).abs() <= 0.02);
    }
    assert_eq!(
        decoded
            .iter()
            .map(|(r, i)| (r.round(), i.round()))
            .collect::<Vec<_>>(),
        vec![(3.0, 4.0), (2.0, -1.0)]
    );
}

#[test]
fn nearest_encoding_of_the_toy_message() {
    let dir = toy_dir();
    let out = ckks(
        dir.path(),
        &[
            "--params",
            "toy.params",
            "encode",
            "--in",
            "message.txt",
            "--out",
            "m.txt",
        ],
    );
    assert_eq!(code(&out), 0);
    // coordinates are (160, 64√2, 160, 32√2); nearest rounding sends 90.51 up
    assert_eq!(
        fs::read_to_string(dir.path().join("m.txt")).unwrap(),
        "N=4\nq=none\n160 91 160 45\n"
    );
}

#[test]
fn encode_then_decode_is_identity_within_tolerance() {
    let dir = staged(&["small.params", "a.txt"]);
    let run = |args: &[&str]| assert_eq!(code(&ckks(dir.path(), args)), 0, "{args:?}");
    run(&[
        "--params",
        "small.params",
        "encode",
        "--in",
        "a.txt",
        "--out",
        "m.txt",
    ]);
    run(&[
        "--params",
        "small.params",
        "decode",
        "--in",
        "m.txt",
        "--out",
        "back.txt",
    ]);
    let a = slots(&fs::read_to_string(dir.path().join("a.txt")).unwrap());
    let back = slots(&fs::read_to_string(dir.path().join("back.txt")).unwrap());
    for ((x, y), (u, v)) in a.iter().zip(&back) {
        assert!((x - u).hypot(y - v) < 1e-5);
    }
}

#[test]
fn evaluation_pipeline_computes_slotwise_results() {
    let dir = staged(&["small.params", "a.txt", "b.txt", "full_manifest.txt"]);
    let out = ckks(
        dir.path(),
        &[
            "--params",
            "small.params",
            "--seed",
            "5",
            "pipeline",
            "--manifest",
            "full_manifest.txt",
        ],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).lines().count(), 15);
    let read = |f: &str| slots(&fs::read_to_string(dir.path().join(f)).unwrap());
    let (a, b) = (read("a.txt"), read("b.txt"));
    for (i, ((ar, ai), (br, bi))) in a.iter().zip(&b).enumerate() {
        let (sr, si) = read("sum_slots.txt")[i];
        assert!((sr - (ar + br)).hypot(si - (ai + bi)) < 1e-3);
        let (pr, pi) = read("prod_slots.txt")[i];
        assert!((pr - (ar * br - ai * bi)).hypot(pi - (ar * bi + ai * br)) < 1e-2);
    }
    // x -> x^3 with M = 16: slot exponents 1, 3, 5, 7 read old exponents
    // 3, 9, 15, 5, and 9, 15 are conjugates of exponents 7, 1
    let rot = read("rot3_slots.txt");
    for (s, src, conj) in [
        (0usize, 1usize, false),
        (1, 3, true),
        (2, 0, true),
        (3, 2, false),
    ] {
        let want_im = if conj { -a[src].1 } else { a[src].1 };
        assert!((rot[s].0 - a[src].0).hypot(rot[s].1 - want_im) < 1e-3);
    }
}

#[test]
fn same_seed_gives_identical_files() {
    let files = ["small.params", "a.txt", "b.txt", "full_manifest.txt"];
    let (d1, d2) = (staged(&files), staged(&files));
    for d in [&d1, &d2] {
        let out = ckks(
            d.path(),
            &[
                "--params",
                "small.params",
                "--seed",
                "77",
                "pipeline",
                "--manifest",
                "full_manifest.txt",
            ],
        );
        assert_eq!(code(&out), 0);
    }
    for f in [
        "keys/sk.txt",
        "keys/evk.txt",
        "keys/rotk_15.txt",
        "cb.txt",
        "prod.txt",
        "rot3_slots.txt",
    ] {
        assert_eq!(
            fs::read(d1.path().join(f)).unwrap(),
            fs::read(d2.path().join(f)).unwrap(),
            "{f}"
        );
    }
    // a different seed changes the keys
    let d3 = staged(&files);
    ckks(
        d3.path(),
        &[
            "--params",
            "small.params",
            "--seed",
            "78",
            "pipeline",
            "--manifest",
            "full_manifest.txt",
        ],
    );
    assert_ne!(
        fs::read(d1.path().join("keys/sk.txt")).unwrap(),
        fs::read(d3.path().join("keys/sk.txt")).unwrap()
    );
}

#[test]
fn noise_report() {
    let dir = toy_dir();
    ckks(
        dir.path(),
        &[
            "--params",
            "toy.params",
            "pipeline",
            "--manifest",
            "manifest.txt",
        ],
    );
    let out = ckks(
        dir.path(),
        &[
            "--params",
            "toy.params",
            "noise",
            "--sk",
            "keys/sk.txt",
            "--ct",
            "ct.txt",
            "--expect",
            "m.txt",
        ],
    );
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("measured=3.7739"), "{text}");
    assert!(text.contains("b_clean=328.03"));
    assert!(text.contains("decode_safe=false"));
}

#[test]
fn params_presets_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = ckks(dir.path(), &["params", "--preset", "toy", "--out", "p.txt"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        fs::read_to_string(dir.path().join("p.txt")).unwrap(),
        fs::read_to_string(golden().join("toy.params")).unwrap()
    );
    let out = ckks(dir.path(), &["--params", "p.txt", "params"]);
    assert!(stdout(&out).contains("chain=[5, 20, 80, 320, 1280]"));
    let out = ckks(dir.path(), &["params", "--preset", "demo"]);
    assert!(stdout(&out).contains("M=2048"));
}

#[test]
fn lattice_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("b.txt"), "2 2\n2 0\n1 1\n").unwrap();
    fs::write(dir.path().join("g.txt"), "2 2\n2 0\n3 0\n").unwrap();
    fs::write(dir.path().join("z.txt"), "2 2\n1 0\n0 1\n").unwrap();
    let out = ckks(dir.path(), &["lattice", "svp", "--in", "b.txt"]);
    assert!(stdout(&out).contains("norm_sq=2\n"), "{}", stdout(&out));
    let out = ckks(dir.path(), &["lattice", "bound", "--in", "b.txt"]);
    assert!(stdout(&out).contains("2 2\n2 0\n0 1\n"));
    assert!(stdout(&out).contains("lambda1_lower_bound_sq=1\n"));
    let out = ckks(
        dir.path(),
        &["lattice", "cvp", "--in", "z.txt", "--target", "2/5,3/5"],
    );
    assert!(stdout(&out).contains("vector=0 1\n"));
    let out = ckks(dir.path(), &["lattice", "basis", "--in", "g.txt"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1 2\n1 0\n");
}

#[test]
fn lwe_demo_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = ckks(
        dir.path(),
        &["--seed", "3", "lwe", "demo", "--trials", "200"],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("trials=200 failures=0"));
}

#[test]
fn exit_codes_identify_the_failing_component() {
    let dir = toy_dir();
    let p = dir.path();
    fs::write(p.join("bad_msg.txt"), "1 2 3\n").unwrap();
    fs::write(p.join("three.txt"), "1 0\n2 0\n3 0\n").unwrap();
    fs::write(
        p.join("bad.params"),
        "M=6\nN=3\ndelta=64\np=4\nq0=5\nL=4\nsigma_err=3.2\nh=2\n",
    )
    .unwrap();
    fs::write(p.join("bad.samplers"), "dg 1 1 0 0\n").unwrap();
    fs::write(p.join("dependent.txt"), "2 2\n1 2\n2 4\n").unwrap();
    fs::write(
        p.join("wide_sk.txt"),
        "type=sk level=4 scale=1 k=-\nN=8\nq=none\n0 1 0 0 0 0 0 0\n",
    )
    .unwrap();
    let toy = ["--params", "toy.params"];
    let run = |extra: &[&str]| code(&ckks(p, &[&toy[..], extra].concat()));

    assert_eq!(code(&ckks(p, &["frobnicate"])), 2);
    assert_eq!(
        code(&ckks(
            p,
            &["encode", "--in", "message.txt", "--out", "m.txt"]
        )),
        2
    );
    assert_eq!(run(&["decode", "--in", "missing.txt", "--out", "x.txt"]), 3);
    assert_eq!(run(&["encode", "--in", "bad_msg.txt", "--out", "x.txt"]), 4);
    assert_eq!(
        code(&ckks(
            p,
            &[
                "--params",
                "bad.params",
                "encode",
                "--in",
                "message.txt",
                "--out",
                "x.txt"
            ]
        )),
        5
    );
    assert_eq!(run(&["encode", "--in", "three.txt", "--out", "x.txt"]), 7);
    assert_eq!(
        run(&["keygen", "--out-dir", "k2", "--samplers", "bad.samplers"]),
        11
    );
    assert_eq!(
        code(&ckks(p, &["lattice", "svp", "--in", "dependent.txt"])),
        9
    );
    assert_eq!(code(&ckks(p, &["lwe", "demo", "--q", "256"])), 10);

    assert_eq!(run(&["pipeline", "--manifest", "manifest.txt"]), 0);
    assert_eq!(
        run(&["eval", "rescale", "--in", "ct.txt", "--to", "4", "--out", "x.txt"]),
        8
    );
    assert_eq!(
        run(&[
            "decrypt",
            "--sk",
            "wide_sk.txt",
            "--in",
            "ct.txt",
            "--out",
            "x.txt"
        ]),
        6
    );
    // a file of the wrong kind is a parse failure
    assert_eq!(
        run(&[
            "decrypt",
            "--sk",
            "keys/pk.txt",
            "--in",
            "ct.txt",
            "--out",
            "x.txt"
        ]),
        4
    );
}

#[test]
fn manifest_inputs_must_exist_before_use() {
    let dir = toy_dir();
    let p = dir.path();
    fs::write(
        p.join("broken.txt"),
        "decrypt --sk keys/sk.txt --in ct.txt --out d.txt\nkeygen --out-dir keys\n",
    )
    .unwrap();
    let out = ckks(
        p,
        &[
            "--params",
            "toy.params",
            "pipeline",
            "--manifest",
            "broken.txt",
        ],
    );
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("step 1"));
    // nothing ran
    assert!(!p.join("keys").exists());

    fs::write(p.join("nested.txt"), "pipeline --manifest manifest.txt\n").unwrap();
    let out = ckks(
        p,
        &[
            "--params",
            "toy.params",
            "pipeline",
            "--manifest",
            "nested.txt",
        ],
    );
    assert_eq!(code(&out), 2);
    fs::write(p.join("typo.txt"), "encode --inn message.txt\n").unwrap();
    let out = ckks(
        p,
        &[
            "--params",
            "toy.params",
            "pipeline",
            "--manifest",
            "typo.txt",
        ],
    );
    assert_eq!(code(&out), 2);
}
