mod alpha1;
mod beta;
mod demo;
mod equations;
mod problem;
mod space;
mod template;
mod verify;

pub use alpha1::{alpha1_c, alpha1_rho, cocycle_scalars_of, uniform_cocycle, CocycleBlocks};
pub use beta::{beta_nonlinear, beta_nonlinear_entry, build_beta};
pub use space::{ExtensionSpace, PairKind};
pub use template::{alpha2_template, parse_symbolic_multivector, Alpha2Template, TemplateEntry};
pub use equations::{
    all_triples, equations_on, equations_traced, extract_equations, extract_equations_symbolic, format_triple, parse_equation, parse_triples,
    product_unknown, split_by_unknown, support_triples, times_unknown, Triple,
};
pub use problem::{solve_waves, ExtensionProblem, ExtensionSolution, WaveOutcome, WaveResult, WaveSpec};
pub use verify::{
    check_facts, degree1_conditions, membership_violations, pullback_check, verify_extension, verify_extension_with, CascadeSummary,
    Degree1Report, ExtensionReport, FactsReport, PullbackCheck,
};
pub use demo::{
    bivector_fixture, demo_names, first_term, jacobiator_check, load_demo, parse_demo, run_case, run_demo, CaseKind, CaseReport, CheckResult,
    Demo, DemoCase, DemoReport, SourceMap, EXPECTED,
};
