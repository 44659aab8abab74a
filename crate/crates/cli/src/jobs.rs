use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use stv_core::decimal::{self, vector_key, Decimal};
use stv_core::gitfan::git_fan;
use stv_core::monoids::{choose_A, choose_n, hilbert_basis, is_in_monoid, saturation_membership};
use stv_core::quasifan_algebra::build_algebra;
use stv_core::stable_toric::{self, aut_group, classify_stv_configs, default_nonzero_image_chars};
use stv_core::{AffineMonoid, AutGroupInput, Cone, IntMatrix, IntVector, Product, Quasifan, StvConfig, WeightData};

use crate::errors::{CliError, DomainError};

fn parse<T: DeserializeOwned>(input: &str) -> Result<T, CliError> {
    serde_json::from_str(input).map_err(|e| CliError::Schema(e.to_string()))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn decimal_vectors(vs: &[IntVector]) -> Value {
    Value::Array(vs.iter().map(|v| json!(v.iter().map(ToString::to_string).collect::<Vec<_>>())).collect())
}

fn decimal_vector(v: &IntVector) -> Value {
    json!(v.iter().map(ToString::to_string).collect::<Vec<_>>())
}

/// A JSON integer when it fits in 64 bits, a decimal string otherwise.
fn integer<T: ToString>(n: &T) -> Value
where
    for<'a> u64: TryFrom<&'a T>,
{
    match u64::try_from(n) {
        Ok(x) => json!(x),
        Err(_) => json!(n.to_string()),
    }
}

fn check_rank(k: usize, vs: &[IntVector], what: &str) -> Result<(), CliError> {
    match vs.iter().find(|v| v.len() != k) {
        Some(v) => Err(CliError::Schema(format!("{what} {} has length {}, expected {k}", vector_key(v), v.len()))),
        None => Ok(()),
    }
}

pub fn gitfan(input: &str) -> Result<Value, CliError> {
    let w: WeightData = parse(input)?;
    Ok(to_value(&git_fan(&w)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SaturateInput {
    char_rank: usize,
    #[serde(with = "decimal::vectors")]
    generators: Vec<IntVector>,
    #[serde(with = "decimal::vectors", default)]
    query: Vec<IntVector>,
}

pub fn saturate(input: &str) -> Result<Value, CliError> {
    let job: SaturateInput = parse(input)?;
    check_rank(job.char_rank, &job.generators, "generator")?;
    check_rank(job.char_rank, &job.query, "query")?;
    let monoid = AffineMonoid::new(job.char_rank, &job.generators)?;
    let pointed = monoid.cone().is_pointed();
    let basis = if pointed { decimal_vectors(&hilbert_basis(monoid.cone())?) } else { Value::Null };
    let mut membership = Vec::with_capacity(job.query.len());
    for chi in &job.query {
        let in_monoid = if pointed { json!(is_in_monoid(&monoid, chi)?) } else { Value::Null };
        membership.push(json!({
            "chi": decimal_vector(chi),
            "in_saturation": saturation_membership(&monoid, chi),
            "in_monoid": in_monoid,
        }));
    }
    Ok(json!({
        "generators": decimal_vectors(monoid.generators()),
        "cone": to_value(monoid.cone()),
        "pointed": pointed,
        "hilbert_basis": basis,
        "membership": membership,
    }))
}

pub fn select_basis(input: &str, j_max: u64) -> Result<Value, CliError> {
    let w: WeightData = parse(input)?;
    if j_max == 0 {
        return Err(CliError::Schema("--j-max must be positive".into()));
    }
    let fan = git_fan(&w)?;
    let a_set = choose_A(&fan)?;
    let lemma = choose_n(&w, &a_set, j_max)?;
    let n_chi: BTreeMap<String, u64> =
        lemma.per_character_exponents.iter().map(|(chi, &n)| (vector_key(chi), n)).collect();
    Ok(json!({
        "A": decimal_vectors(&lemma.a_set),
        "N": integer(&lemma.n_exponent),
        "n_chi": n_chi,
        "verified_bound": lemma.verified_bound,
    }))
}

/// The quasifan wire form, plus products to evaluate.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BouquetInput {
    dim: usize,
    cones: Vec<Cone>,
    #[serde(default)]
    maximal: Option<Vec<Cone>>,
    #[serde(default)]
    products: Vec<(Decimals, Decimals)>,
}

#[derive(Deserialize)]
#[serde(transparent)]
struct Decimals(#[serde(with = "decimal::vector")] IntVector);

pub fn bouquet(input: &str, box_bound: u64) -> Result<Value, CliError> {
    let job: BouquetInput = parse(input)?;
    for c in job.cones.iter().chain(job.maximal.iter().flatten()) {
        if c.ambient_dim() != job.dim {
            return Err(CliError::Schema(format!("cone of dimension {} in a quasifan of dimension {}", c.ambient_dim(), job.dim)));
        }
    }
    let quasifan = Quasifan::validate(job.dim, &job.cones)?;
    let alg = build_algebra(&quasifan, box_bound)?;

    let multiplicity_free = alg.basis().iter().all(|chi| {
        let h = quasifan.maximal_cones().iter().any(|c| c.contains(chi));
        alg.graded_dimension(chi) == usize::from(h)
    });
    let mut products = Vec::with_capacity(job.products.len());
    for (Decimals(a), Decimals(b)) in &job.products {
        if a.len() != job.dim || b.len() != job.dim {
            return Err(CliError::Schema(format!("product factors must have length {}", job.dim)));
        }
        let result = match alg.multiply(a, b)? {
            Product::Zero => json!("zero"),
            Product::Monomial(v) => decimal_vector(&v),
            Product::OutOfBox(v) => json!({ "out_of_box": decimal_vector(&v) }),
        };
        products.push(json!({ "a": decimal_vector(a), "b": decimal_vector(b), "product": result }));
    }
    Ok(json!({
        "quasifan": to_value(&quasifan),
        "box_bound": box_bound,
        "basis_size": alg.basis().len(),
        "components": to_value(&alg.components()),
        "multiplicity_free": multiplicity_free,
        "products": products,
        "associativity": to_value(&alg.check_associativity()),
    }))
}

fn config_json(c: &StvConfig) -> Value {
    json!({
        "component_cones": to_value(&c.component_cones()),
        "chamber_assignment": c.chamber_assignment(),
        "irreducible": c.is_irreducible(),
    })
}

pub fn classify(input: &str, chamber_cap: usize) -> Result<Value, CliError> {
    let w: WeightData = parse(input)?;
    let fan = git_fan(&w)?;
    let configs = classify_stv_configs(&fan, chamber_cap)?;
    Ok(json!({
        "git_fan": to_value(&fan),
        "configs": configs.iter().map(config_json).collect::<Vec<_>>(),
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AutInput {
    ambient: WeightData,
    components: Vec<Cone>,
    #[serde(rename = "A", default)]
    a_set: Option<Vec<Decimals>>,
    #[serde(default)]
    nonzero_image_chars: Option<Vec<Decimals>>,
    #[serde(rename = "N", default)]
    n_exponent: Option<Decimal>,
}

pub fn autgroup(input: &str, chamber_cap: usize) -> Result<Value, CliError> {
    let job: AutInput = parse(input)?;
    let k = job.ambient.char_rank();
    for c in &job.components {
        if c.ambient_dim() != k {
            return Err(CliError::Schema(format!("component of dimension {} for character rank {k}", c.ambient_dim())));
        }
    }
    let fan = git_fan(&job.ambient)?;
    if fan.chambers().len() > chamber_cap {
        return Err(DomainError::from(stv_core::StvError::ChamberCapExceeded {
            chambers: fan.chambers().len(),
            cap: chamber_cap,
        })
        .into());
    }
    let config = StvConfig::from_components(&fan, &job.components)?;
    let a_set = match job.a_set {
        Some(a) => a.into_iter().map(|d| d.0).collect(),
        None => choose_A(&fan)?,
    };
    check_rank(k, &a_set, "element of A")?;
    let nonzero = match job.nonzero_image_chars {
        Some(b) => b.into_iter().map(|d| d.0).collect(),
        None => default_nonzero_image_chars(&job.ambient),
    };
    check_rank(k, &nonzero, "character")?;
    if a_set.is_empty() {
        return Err(CliError::Schema("A must be nonempty".into()));
    }
    let alpha = IntMatrix::from_columns(&a_set, k)?;
    let aut_input = AutGroupInput {
        a_set: a_set.clone(),
        alpha,
        config: config.clone(),
        nonzero_image_chars: nonzero.clone(),
        n_exponent: job.n_exponent.map(|d| d.0),
    };
    let group = aut_group(&aut_input)?;
    let order = group.order().map_or(Value::Null, |o| integer(&o));
    Ok(json!({
        "A": decimal_vectors(&a_set),
        "config": config_json(&config),
        "nonzero_image_chars": decimal_vectors(&nonzero),
        "aut": to_value(&group),
        "order": order,
    }))
}

pub fn verify_example(m: u64) -> Result<Value, CliError> {
    if m == 0 {
        return Err(CliError::Schema("--m must be positive".into()));
    }
    Ok(to_value(&stable_toric::verify_example(m)?))
}
