use std::process::{Command, Output};

fn symglue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symglue")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn construct_and_verify_f5_example() {
    let o = symglue(&[
        "construct", "--field", "fp:5", "--e", "0,1,4", "--eprime", "0,2,3", "--sigma", "2,1,3", "--verify", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["gamma", "a", "b", "lambda", "sextic", "f", "fprime", "checks"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["lambda"], "4");
    assert_eq!(v["gamma"], serde_json::json!([["1", "4"], ["1", "2"]]));
    // (4t^2+1)(4t^2+4)(4t^2+3) = 4t^6 + 3t^4 + t^2 + 2
    assert_eq!(v["sextic"], serde_json::json!(["2", "0", "1", "0", "3", "0", "4"]));
    let checks = v["checks"].as_object().unwrap();
    assert!(checks.len() >= 15);
    assert!(checks.values().all(|s| s == "pass"), "{checks:?}");

    let o = symglue(&["verify", "--field", "q", "--e", "0,1,-1", "--eprime", "0,1,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn census_f5_row_count() {
    let o = symglue(&["census", "--field", "fp:5", "--construct"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), "e1,e2,e3,ep1,ep2,ep3,sigma,j,jp,theta_smooth,sextic");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 21600);
    let smooth = rows.iter().filter(|r| r.contains(",true,")).count();
    assert_eq!(smooth, 14400);
    assert!(rows.iter().filter(|r| r.contains(",true,")).all(|r| r.contains("t^6")));
}

#[test]
fn moebius_and_family() {
    let o = symglue(&["moebius", "--ring", "z:15", "--from", "0,1,2", "--to", "0,1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[[1, 0], [0, 1]]"));

    let o = symglue(&["family", "--p", "7", "--var", "s", "--e", "0,1,s", "--eprime", "0,1,s+1", "--sigma", "1,2,3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let bad: Vec<&str> = v["bad_locus"].as_array().unwrap().iter().map(|b| b["s0"].as_str().unwrap()).collect();
    assert_eq!(bad, ["0", "1", "6"]);
    assert_eq!(v["specializations"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    // usage error
    assert_eq!(symglue(&["construct", "--field", "fp:5"]).status.code(), Some(2));
    // bad descriptor, unparsable element
    assert_eq!(symglue(&["construct", "--field", "fp:9", "--e", "0,1,2", "--eprime", "0,1,3"]).status.code(), Some(2));
    assert_eq!(symglue(&["construct", "--field", "fp:5", "--e", "0,1,w", "--eprime", "0,1,3"]).status.code(), Some(2));
    // precondition: identity sigma between isomorphic curves is not theta-smooth
    let o = symglue(&["construct", "--field", "fp:5", "--e", "0,1,4", "--eprime", "0,1,4"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("theta-smooth"));
    // singular curve
    assert_eq!(symglue(&["construct", "--field", "fp:5", "--e", "0,1,1", "--eprime", "0,1,3"]).status.code(), Some(3));
}
