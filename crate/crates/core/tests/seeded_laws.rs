use polarity::verify::verify_seeded;

#[test]
fn seeded_battery_passes_and_is_deterministic() {
    let r = verify_seeded(7);
    println!("{}", r.render());
    assert!(r.all_passed(), "{}", r.render());
    assert_eq!(r, verify_seeded(7));
}
