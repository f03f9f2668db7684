use nijenhuis::exactring::{solve_linear, SolveOutcome};
use nijenhuis_bench::{beta, dense_poly, square_system, zero_values};

#[test]
fn bench_inputs_are_well_formed() {
    assert_eq!(dense_poly(3, 2).len(), 10);
    assert_eq!(beta(3).space().len(), 12);
    let sys = square_system(6);
    match solve_linear(&sys) {
        SolveOutcome::Solution(s) => {
            assert!(s.free.is_empty());
            assert!(s.satisfies(&sys));
        }
        SolveOutcome::Inconsistent { .. } => panic!("bench system must be solvable"),
    }
    assert_eq!(zero_values(&sys).len(), 6);
}
