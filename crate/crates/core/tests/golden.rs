use bimodal::proofs::render_inventories;

#[test]
fn inventory_matches_golden_file() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/inventory.txt");
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(path, render_inventories()).unwrap();
    }
    let golden = std::fs::read_to_string(path).unwrap();
    assert_eq!(render_inventories(), golden, "rerun with BLESS=1 after an intended change");
}
