use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_anreduce");
const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn data(name: &str) -> String {
    format!("{DATA}/{name}")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn parallelize_tangential() {
    let o = run(&[
        "parallelize",
        &data("tangential.an"),
        &data("tangential.sched"),
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "a = a | d | !e\nb = !(a | d | !e)\nc = b\nd = c\ne = a\nh = e\n"
    );
}

#[test]
fn parallel_schedule_reemits_input() {
    let text = "a = !b | c\nb = a\nc = !b\n";
    let o = run_stdin(&["parallelize", "-"], text);
    assert_eq!(stdout(&o), text);
}

#[test]
fn non_block_sequential_schedule_exits_3() {
    let o = run(&[
        "parallelize",
        &data("three.an"),
        &data("three_periodic.sched"),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("schedule is not block-sequential"));
}

#[test]
fn parse_error_exits_2() {
    let o = run_stdin(&["limit", "-"], "a = b &\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_file_exits_1() {
    let o = run(&["limit", "/nonexistent/net.an"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cap_exceeded_exits_4() {
    let o = run(&["limit", &data("three.an"), "--cap-n", "2"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn reductions_of_tangential() {
    let args = |cmd| {
        [
            cmd,
            data("tangential.an"),
            data("tangential.sched"),
            "--verify".into(),
        ]
    };
    let o = run(&args("reduce".into()).each_ref().map(String::as_str));
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);
    assert!(stderr(&o).contains("signature match"));

    let o = run(&args("reduce-tc".into()).each_ref().map(String::as_str));
    assert!(o.status.success());
    assert_eq!(stdout(&o), "a = a | d | !e\nc = !a\nd = c\ne = a\n");
    assert!(stderr(&o).contains("signature match"));
}

#[test]
fn minimal_input_reports_nothing_removed() {
    let o = run_stdin(&["reduce", "-", "--format", "json"], "a = !b\nb = a\n");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["merges"].as_array().unwrap().len(), 0);
    assert_eq!(v["report"]["pruned"].as_array().unwrap().len(), 0);
}

#[test]
fn reduce_tc_rejects_other_shapes() {
    let o = run_stdin(&["reduce-tc", "-"], "a = a | d | !c\nc = a\nd = !c\n");
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("not a tangential cycle"));
}

#[test]
fn random_tc_batch_verifies() {
    for seed in 0..10 {
        let seed = seed.to_string();
        let net = run(&["gen", "tc", "--random", "3", "--seed", &seed]);
        let net = stdout(&net);
        let sched = run_stdin(&["gen", "schedule", "-", "--seed", &seed], &net);
        let sched = stdout(&sched);
        let o = run_stdin(&["reduce-tc", "-", sched.trim(), "--verify"], &net);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stderr(&o).contains("signature match"), "{}", stderr(&o));
    }
}

#[test]
fn verify_verdicts() {
    let three = data("three.an");
    let o = run(&["verify", &three, &three]);
    assert!(stdout(&o).contains("limit-isomorphic: yes, signature {5}"));

    let o = run(&[
        "verify",
        &three,
        &three,
        "--right-schedule",
        &data("three_sequential.sched"),
    ]);
    assert!(stdout(&o).contains("limit-isomorphic: no, signatures {5} vs {2}"));

    let reduced = run(&[
        "reduce-tc",
        &data("tangential.an"),
        &data("tangential.sched"),
    ]);
    let o = run_stdin(
        &[
            "verify",
            &data("tangential.an"),
            "-",
            "--left-schedule",
            &data("tangential.sched"),
        ],
        &stdout(&reduced),
    );
    assert!(
        stdout(&o).starts_with("limit-isomorphic: yes, signature {"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn limit_and_count() {
    let o = run(&["limit", &data("three.an")]);
    assert!(stdout(&o).starts_with("1 cycle: length 5\n"));

    let cycle = run(&["gen", "tc", "--cycles", "4"]);
    let o = run_stdin(&["count", "-", "--length", "1"], &stdout(&cycle));
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn gen_dc_pipes_into_limit() {
    let dc = run(&["gen", "dc", "--sizes", "3,4", "--signs", "+,+"]);
    assert!(dc.status.success());
    let o = run_stdin(&["limit", "-"], &stdout(&dc));
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("2 cycles: lengths 1, 1"));
}

#[test]
fn dot_outputs() {
    let o = run(&["dot", &data("three.an"), "{a} {b} {c}"]);
    assert!(stdout(&o).contains("\"a\" -> \"b\" [label=\"<\"];"));
    let o = run(&["dot", &data("three.an")]);
    assert!(stdout(&o).contains("\"c\" -> \"a\";"));
    let o = run(&["dynamics", &data("three.an"), "--format", "dot"]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn dynamics_table_and_json() {
    let o = run(&["dynamics", &data("three.an"), "--jobs", "2"]);
    assert!(stdout(&o).contains("011 -> 100\n"));
    let o = run(&["limit", &data("three.an"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["signature"], serde_json::json!([5]));
}
