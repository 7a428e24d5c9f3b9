//! Full Eliahou search to genus 43: several billion nodes. Run with
//! `cargo test --release --test long_eliahou -- --ignored --nocapture`.

use std::process::Command;

use numsg::GapBitstream;
use serde_json::Value;

#[test]
#[ignore = "walks about 8.6e9 nodes"]
fn eliahou_search_to_genus_43_finds_one_semigroup() {
    let o = Command::new(env!("CARGO_BIN_EXE_numsg"))
        .args(["eliahou", "--max-genus", "43"])
        .output()
        .unwrap();
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let hits: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(hits.len(), 1, "{text}");
    let expected = GapBitstream::from_generators(&[14, 22, 23], Some(56)).unwrap();
    assert_eq!(
        hits[0]["gaps"],
        serde_json::json!(expected.gaps().collect::<Vec<_>>())
    );
    assert_eq!(hits[0]["E"], -1);
    println!("PASS Eliahou search to genus 43: {}", text.trim());
}
