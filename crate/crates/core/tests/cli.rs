use std::io::Write;
use std::process::{Command, Output, Stdio};

fn donlat(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_donlat"))
        .args(args)
        .env_remove("DONLAT_CAP")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(donlat(&["classify"], "[1,-1,-1]").status.code(), Some(0));
    assert_eq!(donlat(&["classify"], "[1,1,0]").status.code(), Some(1));
    assert_eq!(donlat(&["classify"], "{").status.code(), Some(2));
    assert_eq!(donlat(&["validate"], r#"{"n":2,"curves":[[1,0],[0,1]]}"#).status.code(), Some(1));
    assert_eq!(donlat(&["fixture", "oddih-1"], "").status.code(), Some(2));
    assert_eq!(donlat(&["--help"], "").status.code(), Some(0));
}

#[test]
fn fixture_pipes_into_validate() {
    for name in ["ex333", "ih522342", "kato522332", "oddih-2", "oddih-7"] {
        let f = donlat(&["fixture", name], "");
        assert!(f.status.success());
        let v = donlat(&["validate"], &stdout(&f));
        assert_eq!(v.status.code(), Some(0), "{name}: {}", stdout(&v));
    }
}

#[test]
fn fixture_tables() {
    let k: serde_json::Value = serde_json::from_str(&stdout(&donlat(&["fixture", "kato522332"], ""))).unwrap();
    let d4 = k["table"].as_array().unwrap().iter().find(|r| r["label"] == "D_4").unwrap();
    assert_eq!(d4["class"], serde_json::json!([-1, 0, 0, 0, 1, -1]));
    let ih: serde_json::Value = serde_json::from_str(&stdout(&donlat(&["fixture", "ih522342"], ""))).unwrap();
    let d4 = ih["table"].as_array().unwrap().iter().find(|r| r["label"] == "D_4").unwrap();
    assert_eq!(d4["class"], serde_json::json!([-1, -1, 0, 0, 1, -1]));
}

#[test]
fn dot_is_byte_stable() {
    let a = donlat(&["dot", "--fixture", "kato522332"], "");
    let b = donlat(&["dot", "--fixture", "kato522332"], "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("graph \"kato522332\" {\n"));
    assert_eq!(text.matches("\"D_0\" -- \"D_4\";").count(), 2);
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_donlat"))
        .args(["census", "--n", "3"])
        .env("DONLAT_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = donlat(&["census", "--n", "3", "--format", "json"], "");
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rows.as_array().unwrap().iter().all(|r| r["n"] == 3));
}

#[test]
fn smooth_from_file() {
    let dir = std::env::temp_dir().join(format!("donlat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ex333.json");
    std::fs::write(&path, r#"{"n":3,"curves":[[1,-1,-1],[-1,1,-1],[-1,-1,1]]}"#).unwrap();
    let out = donlat(&["smooth", path.to_str().unwrap(), "--i", "0"], "");
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exceptional"], serde_json::json!([0, 1, 0]));
    std::fs::remove_dir_all(&dir).unwrap();
}
