#![allow(dead_code)]

use osc_core::catalog::FunctionCatalogEntry;
use osc_core::positivity::{Ingredients, TheoremId};
use osc_core::sturm::{Monotonicity, PhiSpec};
use osc_core::transforms::{KernelSpec, ProfileFunction};

pub fn profile(family: &str, params: &str) -> ProfileFunction {
    FunctionCatalogEntry::parse(family, params).unwrap().profile()
}

/// φ(t) = 2 − 1/(1 + t): strictly increasing from 1 to 2.
pub fn rising_phi() -> PhiSpec {
    PhiSpec::new(
        "2-1/(1+t)",
        |t: f64| 2.0 - 1.0 / (1.0 + t),
        Monotonicity::StrictlyIncreasing,
        None,
    )
}

pub fn ode_kernel() -> KernelSpec {
    KernelSpec::ode(rising_phi(), 1.0, 400.0).unwrap()
}

pub struct Triple {
    pub name: String,
    pub kernel: KernelSpec,
    pub f: ProfileFunction,
    pub x: f64,
}

fn triple(kernel: KernelSpec, family: &str, params: &str, x: f64) -> Triple {
    let f = profile(family, params);
    Triple {
        name: format!("{} / {} / x={x}", kernel.label(), f.label),
        kernel,
        f,
        x,
    }
}

/// Kernel/profile/x triples covering every kernel variant. The profiles
/// decay at least like t^{-3} so the plain quadrature oracle can settle.
pub fn oracle_catalog() -> Vec<Triple> {
    vec![
        triple(KernelSpec::Sine, "exp_decay", "b=1", 1.0),
        triple(KernelSpec::Sine, "exp_decay", "b=1,beta=0.5", 2.0),
        triple(KernelSpec::Sine, "rational", "gamma=1,delta=1.5,a=1", 1.0),
        triple(KernelSpec::Sine, "indicator", "c=2", 1.0),
        triple(KernelSpec::Cosine, "exp_decay", "b=1", 0.5),
        triple(KernelSpec::Cosine, "shifted_power", "a=1,lambda=3", 1.0),
        triple(KernelSpec::bessel_sqrt(0.0).unwrap(), "exp_decay", "b=1", 1.0),
        triple(
            KernelSpec::bessel_sqrt(1.0).unwrap(),
            "rational",
            "gamma=0,delta=2,a=1",
            2.0,
        ),
        triple(
            KernelSpec::bessel_sqrt(2.5).unwrap(),
            "power_shifted",
            "beta=0.5,a=1,lambda=3",
            1.5,
        ),
        triple(
            KernelSpec::bessel_sqrt(-0.75).unwrap(),
            "exp_decay",
            "b=1,beta=0.5",
            1.0,
        ),
        triple(KernelSpec::scaled_bessel(0.25, 2.0).unwrap(), "exp_decay", "b=1", 1.0),
        triple(KernelSpec::scaled_bessel(0.5, 1.5).unwrap(), "exp_decay", "b=2", 0.7),
        triple(
            KernelSpec::neumann_sqrt(0.75).unwrap(),
            "exp_decay",
            "b=1,beta=0.5",
            1.0,
        ),
        triple(
            KernelSpec::neumann_sqrt(-0.75).unwrap(),
            "exp_decay",
            "b=1,beta=0.25",
            1.0,
        ),
        triple(ode_kernel(), "exp_decay", "b=1", 1.0),
    ]
}

/// Triples meeting the monotone-arch hypotheses: φ increasing and f
/// nonnegative and decreasing (strictly when φ is constant).
pub fn alternating_catalog() -> Vec<Triple> {
    let kernels = [
        KernelSpec::Sine,
        KernelSpec::bessel_sqrt(1.0).unwrap(),
        KernelSpec::bessel_sqrt(2.5).unwrap(),
        KernelSpec::scaled_bessel(0.5, 2.0).unwrap(),
        ode_kernel(),
    ];
    let profiles = [
        ("exp_decay", "b=1"),
        ("power", "beta=0.5"),
        ("rational", "gamma=1,delta=1,a=1"),
        ("shifted_power", "a=1,lambda=0.5"),
    ];
    let mut out = Vec::new();
    for k in &kernels {
        for (fam, p) in profiles {
            out.push(triple(k.clone(), fam, p, 1.0));
        }
    }
    out
}

/// Profiles run through every theorem, including controls that must be
/// rejected.
pub fn certification_catalog() -> Vec<ProfileFunction> {
    [
        ("exp_decay", "b=1"),
        ("exp_decay", "b=2,beta=0.5"),
        ("exp_decay", "b=0.5,beta=1.5"),
        ("power", "beta=0.5"),
        ("power", "beta=1.2"),
        ("rational", "gamma=1,delta=1,a=1"),
        ("rational", "gamma=0,delta=1,a=1"),
        ("rational", "gamma=0.5,delta=0.5,a=2"),
        ("shifted_power", "a=1,lambda=0.5"),
        ("shifted_power", "a=1,lambda=2"),
        ("power_shifted", "beta=0.5,a=1,lambda=1"),
        ("abs_sin_exp", "b=1"),
        ("indicator", "c=2"),
        ("zero", ""),
    ]
    .iter()
    .map(|(f, p)| profile(f, p))
    .collect()
}

pub fn ingredient_sets() -> Vec<(TheoremId, Ingredients)> {
    vec![
        (TheoremId::T, Ingredients::none()),
        (TheoremId::CT, Ingredients::none()),
        (TheoremId::M1, Ingredients::order(1.0)),
        (TheoremId::M1, Ingredients::scaled(0.5, 2.0)),
        (TheoremId::M3, Ingredients::none()),
        (TheoremId::H1, Ingredients::order(1.0)),
        (TheoremId::H1, Ingredients::order(2.0)),
        (TheoremId::H2, Ingredients::order(0.25)),
        (TheoremId::F, Ingredients::order(1.0)),
        (TheoremId::F, Ingredients::order(0.0)),
        (TheoremId::F, Ingredients::order(-0.5)),
        (TheoremId::F, Ingredients::order(-0.75)),
        (TheoremId::Y, Ingredients::order(0.75)),
        (TheoremId::Y, Ingredients::order(-0.75)),
    ]
}
