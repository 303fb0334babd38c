use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lcex::corpus;

fn lcex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcex"))
        .args(args)
        .output()
        .expect("spawn lcex")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, body: &[u8]) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn build(input: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["build", s(input), "-o", s(out)];
    args.extend_from_slice(extra);
    lcex(&args)
}

#[test]
fn build_writes_magic_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "w.txt", &corpus::random(1 << 20, 4, 1));
    let index = dir.path().join("w.lcex");
    let o = build(&input, &index, &["--t", "16"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(&fs::read(&index).unwrap()[..4], b"LCEX");
    assert!(stdout(&o).contains("code_len\t"));
}

#[test]
fn zero_block_length_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "w.txt", b"abababcabababcabababcd");
    let o = build(&input, &dir.path().join("x"), &["--t", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = build(&input, &dir.path().join("x"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(lcex(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn query_example_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "w.txt", b"abababcabababcabababcd");
    let index = dir.path().join("w.lcex");
    assert!(build(&input, &index, &["--t", "4"]).status.success());
    let o = lcex(&["query", s(&index), "--pair", "1", "8", "--pair", "5", "5", "--pair", "2", "9"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 8 14\n5 5 19\n2 9 13\n");

    let pairs = write(dir.path(), "pairs", b"# comment\n1 15\n\n3 4\n");
    let o = lcex(&["query", s(&index), "--pairs-file", s(&pairs)]);
    assert_eq!(stdout(&o), "1 15 7\n3 4 0\n");
}

#[test]
fn query_out_of_range_reports_each_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "w.txt", b"abababcabababcabababcd");
    let index = dir.path().join("w.lcex");
    assert!(build(&input, &index, &["--t", "4"]).status.success());
    let o = lcex(&["query", s(&index), "--pair", "0", "3", "--pair", "1", "8", "--pair", "1", "24"]);
    assert_eq!(o.status.code(), Some(1));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("0 3 error"));
    assert_eq!(lines[1], "1 8 14");
    assert!(lines[2].starts_with("1 24 error"));
}

#[test]
fn random_queries_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "w.txt", &corpus::fibonacci(5000));
    let index = dir.path().join("w.lcex");
    assert!(build(&input, &index, &["--t", "8"]).status.success());
    let a = lcex(&["query", s(&index), "--random", "1000", "--seed", "7"]);
    let b = lcex(&["query", s(&index), "--random", "1000", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 1000);
}

#[test]
fn auto_tune_beats_unit_block_length() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "a.txt", &vec![b'a'; 200_000]);
    let tuned = dir.path().join("tuned.lcex");
    let unit = dir.path().join("unit.lcex");
    let o = build(&input, &tuned, &["--auto-tune"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("auto-tuned t ="));
    assert!(build(&input, &unit, &["--t", "1"]).status.success());
    let (a, b) = (fs::metadata(&tuned).unwrap().len(), fs::metadata(&unit).unwrap().len());
    assert!(a < b, "tuned {a} bytes, t = 1 {b} bytes");
}

#[test]
fn bench_fibonacci_has_no_mismatches() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "fib.txt", &corpus::fibonacci(100_000));
    let csv = dir.path().join("bench.csv");
    let o = lcex(&[
        "bench", s(&input), "--t", "32", "--queries", "100000", "--seed", "3", "--csv", s(&csv), "--corpus", "fib",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let body = fs::read_to_string(&csv).unwrap();
    let mut lines = body.lines();
    assert_eq!(
        lines.next().unwrap(),
        "corpus,n,sigma,z,t,t_prime,build_ms,index_bytes,queries,mean_query_ns,p99_query_ns,oracle_mean_ns,mismatches"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "fib");
    assert_eq!(row[1], "100001");
    assert_eq!(row[8], "100000");
    assert_eq!(row[12], "0");
}

#[test]
fn bench_thread_count_does_not_change_answers() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "tm.txt", &corpus::thue_morse(20_000));
    let index = dir.path().join("tm.lcex");
    assert!(build(&input, &index, &["--t", "8", "--ladder"]).status.success());
    let one = dir.path().join("one");
    let four = dir.path().join("four");
    for (threads, out) in [("1", &one), ("4", &four)] {
        let o = lcex(&[
            "bench", s(&input), "--index", s(&index), "--queries", "5000", "--seed", "9", "--threads", threads,
            "--answers", s(out),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(fs::read(&one).unwrap(), fs::read(&four).unwrap());
}

#[test]
fn saved_index_answers_like_a_fresh_build() {
    let dir = tempfile::tempdir().unwrap();
    let raw = corpus::random(3000, 3, 4);
    let input = write(dir.path(), "r.txt", &raw);
    let index = dir.path().join("r.lcex");
    assert!(build(&input, &index, &["--t", "6", "--t-prime", "2", "--packed"]).status.success());
    fs::remove_file(&input).unwrap();
    let o = lcex(&["query", s(&index), "--random", "2000", "--seed", "1"]);
    assert!(o.status.success());
    let text = lcex::Text::load(&raw, lcex::SentinelPolicy::Auto).unwrap();
    for line in stdout(&o).lines() {
        let v: Vec<usize> = line.split(' ').map(|x| x.parse().unwrap()).collect();
        assert_eq!(lcex::naive_lce(&text, v[0], v[1]).unwrap(), v[2], "{line}");
    }
}

#[test]
fn damaged_index_is_a_format_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.lcex", b"LCEX\x01\x00garbage");
    assert_eq!(lcex(&["stats", s(&bad)]).status.code(), Some(3));
    assert_eq!(lcex(&["query", s(&bad), "--pair", "1", "2"]).status.code(), Some(3));
    assert_eq!(lcex(&["stats", s(&dir.path().join("missing"))]).status.code(), Some(3));
}

#[test]
fn lz77_tune_stats_and_selftest() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "w.txt", b"abababcabababcabababcd");
    let o = lcex(&["lz77", s(&input), "--factors"]);
    assert!(stdout(&o).starts_with("z\t6\nliteral\ta\nliteral\tb\ncopy\t1\t4\n"));

    let o = lcex(&["tune", s(&input), "--budget", "8"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().last().unwrap().starts_with("chosen\t"));

    let index = dir.path().join("w.lcex");
    assert!(build(&input, &index, &["--t", "3", "--z"]).status.success());
    let o = lcex(&["stats", s(&index)]);
    assert!(stdout(&o).contains("z\t6\n"));

    let o = lcex(&["selftest", "--quick"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(" 0 failures"));
}

#[test]
fn explicit_sentinel() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "w.txt", b"banana");
    let index = dir.path().join("w.lcex");
    assert!(build(&input, &index, &["--t", "2", "--sentinel", "$"]).status.success());
    let o = lcex(&["query", s(&index), "--pair", "2", "4"]);
    assert_eq!(stdout(&o), "2 4 3\n");
    let clash = write(dir.path(), "c.txt", b"ba$nana");
    assert_eq!(build(&clash, &index, &["--t", "2", "--sentinel", "$"]).status.code(), Some(3));
}
