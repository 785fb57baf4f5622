use std::process::{Command, Output};

fn mjc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mjc")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = mjc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    mjc(args).status.code().unwrap()
}

const SIX_BALL: &str = "arrival=6,1,2,2;departure=3,1,2,3,2;f=0,1,3,4";

#[test]
fn counts() {
    assert_eq!(stdout(&["count", "--balls", "2", "--capacity", "2", "--method", "thm-l1"]), "7\n");
    assert_eq!(stdout(&["count", "--balls", "5", "--capacity", "3", "--method", "prop1"]), "198\n");
    assert_eq!(stdout(&["count", "--balls", "1", "--capacity", "1", "--length", "4", "--method", "transfer"]), "16\n");
    assert_eq!(stdout(&["count", "--balls", "8", "--method", "infinite"]), "11144\n");
    assert_eq!(stdout(&["count", "--balls", "2", "--capacity", "2", "--length", "2", "--periodic"]), "15\n");
}

#[test]
fn methods_agree() {
    for (b, k, l) in [(3, 2, 2), (4, 1, 3), (5, 2, 1)] {
        let args = |m: &'static str| {
            vec!["count".to_string(), "--balls".into(), b.to_string(), "--capacity".into(), k.to_string(),
                 "--length".into(), l.to_string(), "--method".into(), m.into()]
        };
        let run = |m| {
            let a = args(m);
            stdout(&a.iter().map(String::as_str).collect::<Vec<_>>())
        };
        let t = run("transfer");
        assert_eq!(run("brute"), t);
        assert_eq!(run("thm3"), t);
        if l == 1 {
            assert_eq!(run("prop1"), t);
            assert_eq!(run("cor-l1"), t);
        }
    }
}

#[test]
fn count_json_schema() {
    let out = stdout(&["count", "--balls", "5", "--capacity", "3", "--method", "prop1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["b"], 5);
    assert_eq!(v["k"], 3);
    assert_eq!(v["l"], 1);
    assert_eq!(v["method"], "prop1");
    assert_eq!(v["count"], "198");
}

#[test]
fn series_outputs() {
    let out = stdout(&["series", "--capacity", "2", "--order", "14", "--method", "prop1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let counts: Vec<&str> = v["counts"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(counts.join(","), "1,2,7,17,41,91,195,403,812,1601,3102,5922,11165,20824,38477");
    let csv = stdout(&["series", "--capacity", "3", "--order", "13", "--method", "thm-l1"]);
    assert!(csv.starts_with("b,count\n0,1\n"));
    assert!(csv.ends_with("13,235972\n"));
    let a = stdout(&["series", "--capacity", "1", "--length", "2", "--order", "8", "--method", "thm3"]);
    let b = stdout(&["series", "--capacity", "1", "--length", "2", "--order", "8", "--method", "transfer"]);
    assert_eq!(a, b);
}

#[test]
fn closed_forms() {
    let out = stdout(&["genfun", "--capacity", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["numerator"], serde_json::json!(["1", "-1", "1", "1"]));
    assert_eq!(v["denominator"], serde_json::json!(["1", "-3", "0", "5", "0", "-3", "-1"]));
    let inf = stdout(&["genfun", "--formula", "infinite"]);
    assert!(inf.starts_with("numerator: [1,-2,1]\ndenominator: [1,-4,2]\n"));
    let one = stdout(&["genfun", "--capacity", "1", "--formula", "cor-l1"]);
    assert!(one.starts_with("numerator: [1]\ndenominator: [1,-2,1]\n"));
}

#[test]
fn fitting() {
    let out = stdout(&["fit", "--sequence", "1,2,7,24,82,280,956,3264", "--json"]);
    assert_eq!(out, "{\"order\":2,\"coeffs\":[\"4\",\"-2\"],\"valid_from\":3,\"char_poly\":[\"2\",\"-4\",\"1\"]}\n");
    assert!(stdout(&["fit", "--sequence", "1,1,1,1"]).starts_with("order 1: (1)\n"));
    assert_eq!(code(&["fit", "--sequence", "1,5,2,8,3,9", "--max-order", "1"]), 1);
    assert_eq!(code(&["fit", "--sequence", "1,x"]), 2);
}

#[test]
fn drawing_and_embedding() {
    let golden = include_str!("../../core/tests/golden/six_ball_card.txt");
    assert_eq!(stdout(&["draw", "--card", SIX_BALL]), golden);
    assert_eq!(stdout(&["embed", "--card", SIX_BALL]), "011|1|00|001|11\n");
    assert_eq!(stdout(&["embed", "--embedding", "011|1|00|001|11"]), format!("{SIX_BALL}\n"));
    let seq = stdout(&["embed", "--sequence-embedding", "gamma=011|1|00|001|11;delta=000000"]);
    assert_eq!(seq, format!("{SIX_BALL}\n"));
    assert_eq!(code(&["draw", "--card", "arrival=1;departure=2;f=1"]), 2);
}

#[test]
fn matrix_json() {
    let out = stdout(&["matrix", "--balls", "2", "--capacity", "2", "--json"]);
    assert_eq!(out, "{\"b\":2,\"k\":2,\"states\":[[1,1],[2]],\"counts\":[[\"3\",\"1\"],[\"1\",\"2\"]]}\n");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["count", "--balls", "2", "--capacity", "2", "--length", "2", "--method", "prop1"]), 2);
    assert_eq!(code(&["count", "--balls", "2", "--capacity", "2", "--method", "thm3", "--periodic"]), 2);
    assert_eq!(code(&["count", "--balls", "2", "--method", "transfer"]), 2);
    assert_eq!(code(&["count", "--balls", "2", "--capacity", "0"]), 2);
    assert_eq!(code(&["count", "--bogus"]), 2);
    assert_eq!(code(&["count", "--balls", "30", "--capacity", "3", "--length", "3", "--method", "thm3", "--max-monomials", "1000"]), 3);
    assert_eq!(code(&["count", "--balls", "30", "--capacity", "30"]), 3);
    assert_eq!(code(&["count", "--balls", "6", "--capacity", "2", "--length", "3", "--method", "brute", "--max-sequences", "10"]), 3);
}

#[test]
fn verify_suites() {
    let out = stdout(&["verify", "--suite", "oeis"]);
    assert!(out.contains("PASS oeis/A370304"));
    assert!(out.ends_with("0 failed\n"));
    let json = stdout(&["verify", "--suite", "identities", "--trials", "10", "--json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    assert!(rows.iter().all(|r| r["passed"] == true));
    let ids: Vec<&str> = rows.iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    let cross = stdout(&["verify", "--suite", "cross", "--max-balls", "5", "--max-capacity", "2", "--max-length", "2"]);
    assert!(cross.contains("PASS cross/thm3-transfer/k2/l2"));
}
