use std::collections::BTreeSet;

use serde::Serialize;

use super::StvError;
use crate::gitfan::GitFan;
use crate::polyhedral::{Cone, Quasifan};

/// Default bound on the number of chambers for exhaustive classification.
pub const DEFAULT_CHAMBER_CAP: usize = 16;

/// Component cones, each a union of GIT chambers, covering the weight cone
/// and forming a quasifan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StvConfig {
    component_cones: Vec<Cone>,
    chamber_assignment: Vec<Vec<usize>>,
    #[serde(skip)]
    quasifan: Quasifan,
}

impl StvConfig {
    pub fn component_cones(&self) -> &[Cone] {
        &self.component_cones
    }

    /// Indices into the fan's chambers, per component.
    pub fn chamber_assignment(&self) -> &[Vec<usize>] {
        &self.chamber_assignment
    }

    /// The component cones closed under faces.
    pub fn quasifan(&self) -> &Quasifan {
        &self.quasifan
    }

    pub fn is_irreducible(&self) -> bool {
        self.component_cones.len() == 1
    }

    /// Checks `components` against `fan` and records which chambers make up
    /// each of them.
    pub fn from_components(fan: &GitFan, components: &[Cone]) -> Result<Self, StvError> {
        let mut comps: Vec<Cone> = components.to_vec();
        comps.sort();
        comps.dedup();
        if comps.is_empty() {
            return Err(StvError::InvalidConfig("no component cones".into()));
        }
        let chambers = fan.chambers();
        let mut assignment = Vec::with_capacity(comps.len());
        let mut used = BTreeSet::new();
        for c in &comps {
            let group: Vec<usize> = (0..chambers.len()).filter(|&i| c.contains_cone(&chambers[i])).collect();
            if !is_union_of(fan, &group, c)? {
                return Err(StvError::InvalidConfig(format!("{c:?} is not a union of chambers")));
            }
            for &i in &group {
                if !used.insert(i) {
                    return Err(StvError::InvalidConfig(format!("chamber {i} lies in two components")));
                }
            }
            assignment.push(group);
        }
        if used.len() != chambers.len() {
            return Err(StvError::InvalidConfig("components do not cover the weight cone".into()));
        }
        let quasifan = Quasifan::validate(fan.ambient_dim(), &comps)?;
        Ok(Self {
            component_cones: comps,
            chamber_assignment: assignment,
            quasifan,
        })
    }
}

/// `hull` is the union of the chambers in `group`: it contains them, and
/// meets every other chamber in lower dimension.
fn is_union_of(fan: &GitFan, group: &[usize], hull: &Cone) -> Result<bool, StvError> {
    let top = fan.support().dimension();
    if group.is_empty() || !fan.support().contains_cone(hull) {
        return Ok(false);
    }
    for (i, ch) in fan.chambers().iter().enumerate() {
        if group.contains(&i) {
            if !hull.contains_cone(ch) {
                return Ok(false);
            }
        } else if hull.intersect(ch)?.dimension() == top {
            return Ok(false);
        }
    }
    Ok(true)
}

fn hull_of(fan: &GitFan, group: &[usize]) -> Result<Cone, StvError> {
    let mut rays = Vec::new();
    let mut lin = Vec::new();
    for &i in group {
        let c = &fan.chambers()[i];
        rays.extend(c.rays().iter().cloned());
        lin.extend(c.lineality().iter().cloned());
    }
    Ok(Cone::from_rays_and_lineality(fan.ambient_dim(), &rays, &lin)?)
}

fn compatible(a: &Cone, b: &Cone) -> Result<bool, StvError> {
    let meet = a.intersect(b)?;
    Ok(meet.is_face_of(a) && meet.is_face_of(b))
}

/// Every configuration of component cones obtained by partitioning the
/// chambers into convex groups that meet pairwise in common faces.
pub fn classify_stv_configs(fan: &GitFan, chamber_cap: usize) -> Result<Vec<StvConfig>, StvError> {
    let r = fan.chambers().len();
    if r > chamber_cap {
        return Err(StvError::ChamberCapExceeded { chambers: r, cap: chamber_cap });
    }
    let mut convex: Vec<(u64, Cone)> = Vec::new();
    for mask in 1u64..1 << r {
        let group: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
        let hull = hull_of(fan, &group)?;
        if is_union_of(fan, &group, &hull)? {
            convex.push((mask, hull));
        }
    }

    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    partitions(&convex, (1u64 << r) - 1, 0, &mut chosen, &mut found)?;

    let mut configs = Vec::with_capacity(found.len());
    for picks in found {
        let cones: Vec<Cone> = picks.iter().map(|&g| convex[g].1.clone()).collect();
        configs.push(StvConfig::from_components(fan, &cones)?);
    }
    configs.sort_by(|a, b| a.component_cones.cmp(&b.component_cones));
    Ok(configs)
}

fn partitions(
    convex: &[(u64, Cone)],
    all: u64,
    covered: u64,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) -> Result<(), StvError> {
    if covered == all {
        out.push(chosen.clone());
        return Ok(());
    }
    let lowest = (!covered & all).trailing_zeros();
    for (g, (mask, cone)) in convex.iter().enumerate() {
        if mask >> lowest & 1 == 0 || mask & covered != 0 {
            continue;
        }
        let mut ok = true;
        for &h in chosen.iter() {
            if !compatible(cone, &convex[h].1)? {
                ok = false;
                break;
            }
        }
        if ok {
            chosen.push(g);
            partitions(convex, all, covered | mask, chosen, out)?;
            chosen.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_lattice::IntMatrix;
    use crate::gitfan::{git_fan, WeightData};
    use crate::vector::{ivec, IntVector};

    fn fan(rows: &[&[i64]]) -> GitFan {
        git_fan(&WeightData::affine_space(IntMatrix::from_i64(rows)).unwrap()).unwrap()
    }

    fn cone(dim: usize, gens: &[&[i64]]) -> Cone {
        let g: Vec<IntVector> = gens.iter().map(|v| ivec(v)).collect();
        Cone::from_rays(dim, &g).unwrap()
    }

    #[test]
    fn example_has_unique_config() {
        for m in 1..5 {
            let configs = classify_stv_configs(&fan(&[&[m]]), DEFAULT_CHAMBER_CAP).unwrap();
            assert_eq!(configs.len(), 1);
            assert_eq!(configs[0].component_cones(), &[cone(1, &[&[1]])]);
        }
    }

    #[test]
    fn cross_has_line_and_bouquet() {
        let configs = classify_stv_configs(&fan(&[&[1, -1]]), DEFAULT_CHAMBER_CAP).unwrap();
        let shapes: Vec<&[Cone]> = configs.iter().map(StvConfig::component_cones).collect();
        assert_eq!(
            shapes,
            vec![&[Cone::full_space(1)][..], &[cone(1, &[&[-1]]), cone(1, &[&[1]])][..]]
        );
        assert_eq!(configs[0].chamber_assignment(), &[vec![0, 1]]);
        assert_eq!(configs[1].chamber_assignment(), &[vec![0], vec![1]]);
    }

    #[test]
    fn three_chambers_in_a_row() {
        let f = fan(&[&[1, 1, 0, 1], &[0, 1, 1, 2]]);
        assert_eq!(f.chambers().len(), 3);
        let configs = classify_stv_configs(&f, DEFAULT_CHAMBER_CAP).unwrap();
        assert_eq!(configs.len(), 4);
        assert_eq!(classify_stv_configs(&f, 2), Err(StvError::ChamberCapExceeded { chambers: 3, cap: 2 }));
    }

    #[test]
    fn from_components_rejects_bad_covers() {
        let f = fan(&[&[1, 1, 0, 1], &[0, 1, 1, 2]]);
        let quadrant = cone(2, &[&[1, 0], &[0, 1]]);
        assert!(StvConfig::from_components(&f, std::slice::from_ref(&quadrant)).is_ok());
        let partial = cone(2, &[&[1, 0], &[1, 1]]);
        assert!(matches!(
            StvConfig::from_components(&f, std::slice::from_ref(&partial)),
            Err(StvError::InvalidConfig(_))
        ));
        assert!(matches!(
            StvConfig::from_components(&f, &[partial, quadrant]),
            Err(StvError::InvalidConfig(_))
        ));
    }
}
