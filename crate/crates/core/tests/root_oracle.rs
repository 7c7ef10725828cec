mod common;

#[test]
fn series_roots_agree_with_undetermined_coefficients() {
    let (certified, obstructed) = common::run_root_oracle(50, 0x5eed).unwrap();
    assert!(certified > 10 && obstructed > 5, "{certified} certified, {obstructed} obstructed");
}

#[test]
fn discriminant_is_product_of_root_differences() {
    common::run_discriminant_identity(50, 7).unwrap();
}
