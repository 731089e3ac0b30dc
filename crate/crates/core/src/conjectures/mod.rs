//! Registry-driven checks of congruences, p-adic integrality and
//! divisibility claims for `sum (a k + b) r^k S_k^(2)(c)`.

pub mod engine;
pub mod expr;
pub mod registry;
pub mod rep;

pub use engine::{
    applicability, audit_cases, check_congruence, check_divisibility, check_divisibility_with,
    check_padic_integrality, check_padic_integrality_with, cross_check, exact_sum_reduced,
    expected_rhs, resolve_rule, symmetry_audit, weighted_sum_exact, weighted_sum_mod, CaseAudit,
    CheckOutcome, RuleResolution, WeightedSeries,
};
pub use expr::{Env, Expr};
pub use registry::{
    builtin_registry, merge_registry, parse_registry, registry_load, CheckKind, ConjectureSpec, DivTarget,
    OtherwiseCase, RepCase, RepRule,
};
pub use rep::{all_reps, normalize_rep, solve_rep, NormTag, Representation};
