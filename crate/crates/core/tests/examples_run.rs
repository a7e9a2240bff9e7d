#[path = "../examples/operators.rs"]
mod operators;
#[path = "../examples/delta_duals.rs"]
mod delta_duals;
#[path = "../examples/summation_by_parts.rs"]
mod summation_by_parts;
#[path = "../examples/euler_lagrange.rs"]
mod euler_lagrange;
#[path = "../examples/oscillator.rs"]
mod oscillator;
#[path = "../examples/exact_vs_float.rs"]
mod exact_vs_float;
#[path = "../examples/verify_lattice.rs"]
mod verify_lattice;

#[test]
fn operators_example() {
    let out = operators::run_example().unwrap();
    assert!(out.contains("at t = 3: 15/8"));
    assert!(!out.contains("false"));
}

#[test]
fn delta_duals_example() {
    let out = delta_duals::run_example().unwrap();
    assert_eq!(out.matches("agree: true").count(), 4);
}

#[test]
fn summation_by_parts_example() {
    let out = summation_by_parts::run_example().unwrap();
    assert_eq!(out.matches("residual = 0/1").count(), 12);
    assert!(!out.contains("anchor-b form: residual 0/1"));
}

#[test]
fn euler_lagrange_example() {
    let out = euler_lagrange::run_example().unwrap();
    assert_eq!(out.matches("dJ/df: true").count(), 4);
    assert_eq!(out.matches("agrees: true").count(), 2);
}

#[test]
fn oscillator_example() {
    let out = oscillator::run_example().unwrap();
    assert_eq!(out.matches("converged = true").count(), 3);
    // omega = 0: a straight line between the end values
    let classical = oscillator::classical_oscillator(4, 0.0, 1.0, 4.0);
    for (x, y) in classical.iter().zip([1.0, 2.0, 3.0, 4.0]) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn exact_vs_float_example() {
    let out = exact_vs_float::run_example().unwrap();
    assert!(out.contains("rational max residual   0/1"));
    assert!(!out.contains("all pass: false"));
}

#[test]
fn verify_lattice_example() {
    let out = verify_lattice::run_example().unwrap();
    assert!(out.ends_with("0 failed\n"));
}
