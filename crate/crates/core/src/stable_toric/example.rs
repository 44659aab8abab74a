//! The rank-one example: `T = k^×` acting on `A^1` by `t·x = t^m x`, with
//! `A = {1}` and the universal family `x·u = y^m·v` over `P^1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::aut::{aut_group, default_nonzero_image_chars, AutGroupInput};
use super::classify::{classify_stv_configs, DEFAULT_CHAMBER_CAP};
use super::fiber::{check_finite_fiber, FiberGenerator, FiberVariable, Role, SymbolicFiber};
use super::StvError;
use crate::decimal;
use crate::exact_lattice::{FiniteAbelianGroup, IntMatrix};
use crate::gitfan::{git_fan, GitFan, WeightData};
use crate::monoids::{choose_A, choose_n, hilbert_basis, AffineMonoid};
use crate::vector::{self, IntVector};

/// Fiber degrees up to which the Hilbert function is compared.
const HILBERT_CHECK_DEGREE: i64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartReport {
    pub label: String,
    /// Generator of the fiber ideal in terms of the chart parameter `c`.
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointReport {
    pub point: String,
    pub chart: String,
    pub c: String,
    pub ideal: String,
    pub hilbert_function_ok: bool,
    pub reduced: bool,
    pub generates: bool,
    pub trivializes: bool,
    pub in_h_tilde: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub m: u64,
    #[serde(with = "decimal::vectors")]
    pub weight_monoid_generators: Vec<IntVector>,
    #[serde(with = "decimal::vectors")]
    pub saturation_generators: Vec<IntVector>,
    pub git_fan: GitFan,
    #[serde(rename = "A", with = "decimal::vectors")]
    pub a_set: Vec<IntVector>,
    #[serde(rename = "N")]
    pub n_exponent: u64,
    pub n_chi: BTreeMap<String, u64>,
    pub charts: Vec<ChartReport>,
    pub points: Vec<PointReport>,
    pub excluded: Vec<String>,
    pub aut: FiniteAbelianGroup,
    #[serde(with = "decimal::int")]
    pub aut_order: BigInt,
    #[serde(with = "decimal::vector")]
    pub transition_weight: IntVector,
}

struct Chart {
    label: &'static str,
    /// `(lhs, rhs)` of `lhs − c·rhs`.
    lhs: Vec<u32>,
    rhs: Vec<u32>,
}

impl Chart {
    fn fiber(&self, vars: &[FiberVariable], c: BigRational) -> Result<SymbolicFiber, StvError> {
        let generator = FiberGenerator::Binomial {
            lhs: self.lhs.clone(),
            c,
            rhs: self.rhs.clone(),
        };
        SymbolicFiber::new(vars.to_vec(), generator, self.label)
    }
}

pub fn verify_example(m: u64) -> Result<ExampleReport, StvError> {
    if m == 0 {
        return Err(StvError::InvalidExampleParameter);
    }
    let mm = BigInt::from(m);
    let ambient = WeightData::affine_space(IntMatrix::new(1, 1, vec![mm.clone()])?)?;

    let monoid = AffineMonoid::new(1, &[vec![mm.clone()]])?;
    let saturation_generators = hilbert_basis(monoid.cone())?;
    let fan = git_fan(&ambient)?;

    let a_set = choose_A(&fan)?;
    let lemma = choose_n(&ambient, &a_set, 3)?;
    let n_exponent = lemma.n_exponent.clone();

    let mut vars = vec![FiberVariable::new("x", vec![mm.clone()], Role::Ambient)];
    for (i, chi) in a_set.iter().enumerate() {
        let name = if a_set.len() == 1 { "y".to_string() } else { format!("y{}", i + 1) };
        vars.push(FiberVariable::new(&name, chi.clone(), Role::Auxiliary));
    }
    let mu = u32::try_from(m).map_err(|_| StvError::InvalidFiber("m too large".into()))?;
    let u_chart = Chart {
        label: "u=1",
        lhs: vec![1, 0],
        rhs: vec![0, mu],
    };
    let v_chart = Chart {
        label: "v=1",
        lhs: vec![0, mu],
        rhs: vec![1, 0],
    };
    let charts = vec![
        ChartReport {
            label: u_chart.label.into(),
            generator: format!("x - c*y^{m}"),
        },
        ChartReport {
            label: v_chart.label.into(),
            generator: format!("y^{m} - c*x"),
        },
    ];

    let zero = BigRational::zero();
    let one = BigRational::one();
    let samples = [
        ("(0:1)", &v_chart, zero.clone()),
        ("(1:0)", &u_chart, zero),
        ("(1:1)", &u_chart, one.clone()),
        ("(1:1)", &v_chart, one),
        ("(1:2)", &u_chart, BigRational::from_integer(2.into())),
        ("(2:1)", &v_chart, BigRational::from_integer(2.into())),
    ];
    let mut points = Vec::new();
    for (label, chart, c) in samples {
        let fiber = chart.fiber(&vars, c.clone())?;
        let hilbert_function_ok = (0..=HILBERT_CHECK_DEGREE * i64::try_from(m).unwrap_or(i64::MAX))
            .all(|d| fiber.graded_dimension(&[BigInt::from(d)]) == 1)
            && fiber.graded_dimension(&[BigInt::from(-1)]) == 0;
        let reduced = fiber.is_reduced()?;
        let generates = check_finite_fiber(&fiber, &ambient, &a_set, &n_exponent)?;
        let trivializes = (0..vars.len())
            .filter(|&i| vars[i].role == Role::Auxiliary)
            .all(|i| fiber.trivializes(i));
        points.push(PointReport {
            point: label.into(),
            chart: chart.label.into(),
            c: c.to_string(),
            ideal: fiber.ideal(),
            hilbert_function_ok,
            reduced,
            generates,
            trivializes,
            in_h_tilde: hilbert_function_ok && reduced && generates && trivializes,
        });
    }
    let mut excluded: Vec<String> = points.iter().filter(|p| !p.in_h_tilde).map(|p| p.point.clone()).collect();
    excluded.sort();
    excluded.dedup();

    let configs = classify_stv_configs(&fan, DEFAULT_CHAMBER_CAP)?;
    let config = match configs.as_slice() {
        [only] => only.clone(),
        _ => return Err(StvError::InvalidConfig(format!("expected one configuration, found {}", configs.len()))),
    };
    let alpha = IntMatrix::from_columns(&a_set, 1)?;
    let aut = aut_group(&AutGroupInput {
        a_set: a_set.clone(),
        alpha,
        config,
        nonzero_image_chars: default_nonzero_image_chars(&ambient),
        n_exponent: Some(n_exponent.clone()),
    })?;
    let aut_order = aut.order().unwrap_or_else(BigInt::zero);

    let probe = u_chart.fiber(&vars, BigRational::one())?;
    let transition_weight = vector::sub(&probe.auxiliary_degree(&u_chart.rhs), &probe.auxiliary_degree(&u_chart.lhs));

    let n_chi = lemma
        .per_character_exponents
        .iter()
        .map(|(chi, n)| (decimal::vector_key(chi), *n))
        .collect();
    Ok(ExampleReport {
        m,
        weight_monoid_generators: monoid.generators().to_vec(),
        saturation_generators,
        git_fan: fan,
        a_set,
        n_exponent: lemma.n_exponent_u64().unwrap_or(0),
        n_chi,
        charts,
        points,
        excluded,
        aut,
        aut_order,
        transition_weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::Cone;
    use crate::vector::ivec;

    #[test]
    fn report_for_small_m() {
        for m in 1..=4u64 {
            let r = verify_example(m).unwrap();
            assert_eq!(r.excluded, vec!["(0:1)".to_string(), "(1:0)".to_string()]);
            assert_eq!(r.a_set, vec![ivec(&[1])]);
            assert_eq!(r.n_exponent, m);
            assert_eq!(r.saturation_generators, vec![ivec(&[1])]);
            assert_eq!(r.git_fan.cones(), &[Cone::zero(1), Cone::from_rays(1, &[ivec(&[1])]).unwrap()]);
            assert_eq!(r.aut_order, BigInt::from(m));
            assert_eq!(r.transition_weight, ivec(&[m as i64]));
        }
    }

    #[test]
    fn conditions_at_special_points() {
        let r = verify_example(1).unwrap();
        let at = |p: &str| r.points.iter().find(|x| x.point == p).unwrap().clone();
        let zero_one = at("(0:1)");
        assert!(zero_one.reduced && zero_one.generates && !zero_one.trivializes);
        let one_zero = at("(1:0)");
        assert!(one_zero.reduced && !one_zero.generates && one_zero.trivializes);

        let r3 = verify_example(3).unwrap();
        let zero_one = r3.points.iter().find(|x| x.point == "(0:1)").unwrap();
        assert_eq!(zero_one.ideal, "(y^3)");
        assert!(!zero_one.reduced && zero_one.generates && zero_one.trivializes);
        assert_eq!(r3.aut.invariant_factors(), &[BigInt::from(3)]);
    }

    #[test]
    fn rejects_zero() {
        assert_eq!(verify_example(0), Err(StvError::InvalidExampleParameter));
    }
}
