//! Bowen-Margulis and skinning masses, and the assembled counting constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{count_perpendiculars, PerpError, PerpQuery};
use crate::graph::{volumes, GraphOfGroups, Subgraph};

/// Normalisation of the Patterson density behind a mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Normalisation {
    /// `‖μ_x‖ = 1`.
    Probability,
    /// `‖μ_x‖ = deg(x)/√(deg(x) − 1)`.
    DegOverSqrt,
    /// `‖μ_{x₀}‖` fixed at the root of a spherically symmetric tree.
    RootMass(f64),
}

impl Normalisation {
    pub fn name(&self) -> String {
        match self {
            Normalisation::Probability => "probability".into(),
            Normalisation::DegOverSqrt => "deg/sqrt(deg-1)".into(),
            Normalisation::RootMass(m) => format!("root-mass={m}"),
        }
    }
}

/// The tree covering the quotient.
#[derive(Debug, Clone, PartialEq)]
pub enum TreeSpec {
    /// `(q+1)`-regular tree.
    Regular { q: u64 },
    /// Degrees `p+1` and `q+1` on the two classes.
    Biregular { p: u64, q: u64 },
    /// Spherically symmetric about a root orbit: every vertex at distance
    /// `r` from the orbit has `p_r + 1` neighbours (`p_0 + 1` at the root).
    /// `p` is extended by repeating its last `period` entries; `radii[v]` is
    /// the distance `r_x` of each quotient vertex to the root orbit.
    SphericallySymmetric { p: Vec<u64>, period: usize, radii: Vec<usize>, root_mass: f64 },
}

impl TreeSpec {
    /// Reads the tree type off the quotient's degrees.
    pub fn infer(g: &GraphOfGroups) -> Result<TreeSpec, PerpError> {
        let rep = volumes(g);
        let d0 = rep.degrees[0];
        if rep.degrees.iter().all(|&d| d == d0) {
            return Ok(TreeSpec::Regular { q: d0 - 1 });
        }
        if let Some((a, b)) = &rep.bipartition {
            let da = rep.degrees[a[0]];
            let db = rep.degrees[b[0]];
            if a.iter().all(|&v| rep.degrees[v] == da) && b.iter().all(|&v| rep.degrees[v] == db) {
                return Ok(TreeSpec::Biregular { p: da - 1, q: db - 1 });
            }
        }
        Err(PerpError::UnsupportedConfiguration("tree is neither regular nor biregular".into()))
    }

    /// Critical exponent of `c ≡ 0`.
    pub fn delta(&self) -> f64 {
        match self {
            TreeSpec::Regular { q } => (*q as f64).ln(),
            TreeSpec::Biregular { p, q } => 0.5 * ((p * q) as f64).ln(),
            TreeSpec::SphericallySymmetric { p, period, .. } => {
                let tail = &p[p.len() - period..];
                tail.iter().map(|&x| (x as f64).ln()).sum::<f64>() / *period as f64
            }
        }
    }

    pub fn normalisation(&self) -> Normalisation {
        match self {
            TreeSpec::Regular { .. } => Normalisation::Probability,
            TreeSpec::Biregular { .. } => Normalisation::DegOverSqrt,
            TreeSpec::SphericallySymmetric { root_mass, .. } => Normalisation::RootMass(*root_mass),
        }
    }

    /// Patterson mass at a vertex of tree degree `deg`.
    fn patterson(&self, deg: u64) -> f64 {
        match self {
            TreeSpec::Regular { .. } => 1.0,
            _ => deg as f64 / ((deg - 1) as f64).sqrt(),
        }
    }

    fn check_degrees(&self, g: &GraphOfGroups) -> Result<(), PerpError> {
        let rep = volumes(g);
        let bad = |v: usize, want: u64| {
            Err(PerpError::DegreeMismatch(format!(
                "vertex {} has tree degree {}, the tree needs {want}",
                g.vertex_id(v),
                rep.degrees[v]
            )))
        };
        match self {
            TreeSpec::Regular { q } => {
                for v in 0..g.num_vertices() {
                    if rep.degrees[v] != q + 1 {
                        return bad(v, q + 1);
                    }
                }
            }
            TreeSpec::Biregular { p, q } => {
                let (a, b) = rep
                    .bipartition
                    .as_ref()
                    .ok_or_else(|| PerpError::DegreeMismatch("quotient is not bipartite".into()))?;
                let ok = |cls: &[usize], d: u64| cls.iter().all(|&v| rep.degrees[v] == d);
                if !((ok(a, p + 1) && ok(b, q + 1)) || (ok(a, q + 1) && ok(b, p + 1))) {
                    return Err(PerpError::DegreeMismatch(format!("classes do not have degrees {} and {}", p + 1, q + 1)));
                }
            }
            TreeSpec::SphericallySymmetric { radii, .. } => {
                if radii.len() != g.num_vertices() {
                    return Err(PerpError::DegreeMismatch("one radius per quotient vertex".into()));
                }
                for v in 0..g.num_vertices() {
                    let want = self.sphere_p(radii[v]) + 1;
                    if rep.degrees[v] != want {
                        return bad(v, want);
                    }
                }
            }
        }
        Ok(())
    }

    fn sphere_p(&self, r: usize) -> u64 {
        match self {
            TreeSpec::SphericallySymmetric { p, period, .. } => {
                if r < p.len() {
                    p[r]
                } else {
                    let base = p.len() - period;
                    p[base + (r - base) % period]
                }
            }
            _ => unreachable!(),
        }
    }
}

/// `‖m_BM‖` with the normalisation it was computed in.
#[derive(Debug, Clone, PartialEq)]
pub struct BmMass {
    pub value: f64,
    pub exact: Option<BigRational>,
    pub normalisation: Normalisation,
}

/// Total Bowen-Margulis mass of the quotient.
pub fn bm_mass(tree: &TreeSpec, g: &GraphOfGroups) -> Result<BmMass, PerpError> {
    tree.check_degrees(g)?;
    let rep = volumes(g);
    let exact = match tree {
        TreeSpec::Regular { q } => Some(BigRational::new(BigInt::from(*q), BigInt::from(q + 1)) * &rep.vol),
        TreeSpec::Biregular { .. } => Some(rep.tvol.clone()),
        TreeSpec::SphericallySymmetric { .. } => None,
    };
    let value = match (&exact, tree) {
        (Some(x), _) => x.to_f64().unwrap(),
        (None, TreeSpec::SphericallySymmetric { radii, root_mass, .. }) => {
            let h = tree.delta();
            let p0 = tree.sphere_p(0) as f64;
            let sum: f64 = (0..g.num_vertices())
                .map(|v| {
                    let r = radii[v];
                    let cx = if r == 0 {
                        p0 / (p0 + 1.0)
                    } else {
                        let mut den = (p0 + 1.0).powi(2);
                        for k in 1..r {
                            den *= (tree.sphere_p(k) as f64).powi(2);
                        }
                        let pr = tree.sphere_p(r) as f64;
                        den *= pr;
                        (pr - 1.0) * (2.0 * r as f64 * h).exp() / den + 2.0 * p0 / (p0 + 1.0).powi(2)
                    };
                    cx / g.vertex_order(v) as f64
                })
                .sum();
            root_mass * root_mass * sum
        }
        _ => unreachable!(),
    };
    Ok(BmMass { value, exact, normalisation: tree.normalisation() })
}

/// Shapes with a closed-form skinning mass.
#[derive(Debug, Clone, PartialEq)]
pub enum SkinKind {
    /// A vertex with stabiliser of the given order.
    Point { stabiliser: u64 },
    /// Horoball whose boundary quotient has the given volume.
    Horoball { boundary_vol: f64 },
    /// Closed cycle of length `len`, trivial stabilisers.
    Cycle { len: usize },
    /// Connected subgraph, `degree`-regular, with `vertices` vertices.
    RegularSubgraph { degree: u64, vertices: usize },
    /// Biregular horoball with boundary volumes in each class.
    BiregularHoroball { vol_p: f64, vol_q: f64 },
    /// Biregular line quotient with `vp`, `vq` vertices in each class.
    BiregularCycle { vp: usize, vq: usize },
}

/// `‖σ^±‖` for a shape, in the tree's own normalisation.
pub fn skinning_mass(tree: &TreeSpec, kind: &SkinKind) -> Result<f64, PerpError> {
    match (tree, kind) {
        (TreeSpec::Regular { .. }, SkinKind::Point { stabiliser }) => Ok(1.0 / *stabiliser as f64),
        (TreeSpec::Regular { q }, SkinKind::Horoball { boundary_vol }) => Ok(*q as f64 / (q + 1) as f64 * boundary_vol),
        (TreeSpec::Regular { q }, SkinKind::Cycle { len }) => Ok((q - 1) as f64 / (q + 1) as f64 * *len as f64),
        (TreeSpec::Regular { q }, SkinKind::RegularSubgraph { degree, vertices }) if *degree <= q + 1 => {
            Ok((q + 1 - degree) as f64 / (q + 1) as f64 * *vertices as f64)
        }
        (TreeSpec::Biregular { p, .. }, SkinKind::Point { stabiliser }) => {
            // the stated normalisation fixes ‖μ_x‖ = (p+1)/√p on the p-class
            Ok((p + 1) as f64 / (*p as f64).sqrt() / *stabiliser as f64)
        }
        (TreeSpec::Biregular { p, q }, SkinKind::BiregularHoroball { vol_p, vol_q }) => {
            Ok((*p as f64).sqrt() * vol_p + (*q as f64).sqrt() * vol_q)
        }
        (TreeSpec::Biregular { p, q }, SkinKind::BiregularCycle { vp, vq }) => {
            let (p, q) = (*p as f64, *q as f64);
            Ok((p - 1.0) / p.sqrt() * *vp as f64 + (q - 1.0) / q.sqrt() * *vq as f64)
        }
        _ => Err(PerpError::UnsupportedKind(format!("{kind:?} on {tree:?}"))),
    }
}

/// Skinning mass of a subgraph with trivial stabilisers from codegrees,
/// `Σ_v ‖μ_v‖·codeg(v)/deg(v)`, split by colour class (index 0 only when
/// the graph is not bipartite).
fn skinning_split(tree: &TreeSpec, g: &GraphOfGroups, y: &Subgraph) -> [f64; 2] {
    let colour = g.two_coloring();
    let mut out = [0.0; 2];
    for &v in &y.vertices {
        let deg = g.tree_degree(v);
        let inner = g.out_edges(v).iter().filter(|e| y.edges.binary_search(e).is_ok()).count() as u64;
        let m = tree.patterson(deg) * (deg - inner) as f64 / deg as f64;
        out[colour.as_ref().map_or(0, |c| c[v] as usize)] += m;
    }
    out
}

/// `‖σ^±_Y‖` for a subgraph of a quotient with trivial groups.
pub fn skinning_mass_of(tree: &TreeSpec, g: &GraphOfGroups, y: &Subgraph) -> Result<f64, PerpError> {
    tree.check_degrees(g)?;
    if matches!(tree, TreeSpec::SphericallySymmetric { .. }) {
        return Err(PerpError::UnsupportedKind("subgraph skinning on a spherically symmetric tree".into()));
    }
    let s = skinning_split(tree, g, y);
    Ok(s[0] + s[1])
}

/// Predicted counts against measured ones.
#[derive(Debug, Clone)]
pub struct AsymptoticReport {
    pub tree: TreeSpec,
    pub delta: f64,
    pub normalisation: Normalisation,
    pub bm_mass: f64,
    /// Skinning masses of `Y⁻` and `Y⁺` by colour class.
    pub sigma_minus: [f64; 2],
    pub sigma_plus: [f64; 2],
    /// Constant in front of `e^{δn}` for the cumulative count; for bipartite
    /// quotients the effective constant at `nmax`.
    pub constant: f64,
    /// Bipartite case: constant for paths starting in class `i` and ending
    /// in class `j`, over lengths of parity `i + j`.
    pub class_constants: Option<[[f64; 2]; 2]>,
    /// Predicted cumulative count, index `n`.
    pub predicted: Vec<f64>,
    /// Measured cumulative over predicted.
    pub ratios: Vec<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

/// Assembles the counting constant from the masses and compares it with the
/// exact counts (cumulative, lengths `1..=nmax`).
pub fn theoretical_constant(q: &PerpQuery, tolerance: f64) -> Result<AsymptoticReport, PerpError> {
    q.validate()?;
    let g = q.graph;
    if g.conductances().iter().any(|&c| c != 0.0) {
        return Err(PerpError::UnsupportedConfiguration("constants need c = 0".into()));
    }
    let tree = TreeSpec::infer(g)?;
    let delta = tree.delta();
    let m = bm_mass(&tree, g)?.value;
    let sm = skinning_split(&tree, g, &q.minus);
    let sp = skinning_split(&tree, g, &q.plus);
    let series = count_perpendiculars(q)?;
    let bipartite = g.two_coloring().is_some();
    let (predicted, class_constants): (Vec<f64>, _) = if bipartite {
        let e2 = (2.0 * delta).exp();
        let k: [[f64; 2]; 2] = std::array::from_fn(|i| std::array::from_fn(|j| 2.0 * e2 * sm[i] * sp[j] / ((e2 - 1.0) * m)));
        let pred = (0..=q.nmax)
            .map(|n| {
                let mut s = 0.0;
                for (i, row) in k.iter().enumerate() {
                    for (j, kij) in row.iter().enumerate() {
                        let top = if (n + i + j) % 2 == 0 { n } else { n.saturating_sub(1) };
                        s += kij * (delta * top as f64).exp();
                    }
                }
                s
            })
            .collect();
        (pred, Some(k))
    } else {
        let ed = delta.exp();
        let c = ed * sm[0] * sp[0] / ((ed - 1.0) * m);
        ((0..=q.nmax).map(|n| c * (delta * n as f64).exp()).collect(), None)
    };
    let ratios: Vec<f64> =
        series.cumulative.iter().zip(&predicted).map(|(c, p)| c.to_f64().unwrap() / p).collect();
    let last = *ratios.last().unwrap();
    Ok(AsymptoticReport {
        normalisation: tree.normalisation(),
        tree,
        delta,
        bm_mass: m,
        sigma_minus: sm,
        sigma_plus: sp,
        constant: predicted[q.nmax] / (delta * q.nmax as f64).exp(),
        class_constants,
        predicted,
        pass: (last - 1.0).abs() <= tolerance,
        ratios,
        tolerance,
    })
}

/// The closed form printed for two cycles in a `(p,q)`-biregular graph:
/// `(√q+√p)²·L⁻·L⁺/(2(pq−1)|EY|)`, to be multiplied by `(√(pq))^{N+2}`.
pub fn bicyclette_constant(p: u64, q: u64, l_minus: usize, l_plus: usize, directed_edges: usize) -> f64 {
    let (pf, qf) = (p as f64, q as f64);
    (qf.sqrt() + pf.sqrt()).powi(2) * (l_minus * l_plus) as f64 / (2.0 * (pf * qf - 1.0) * directed_edges as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn bm_mass_regular() {
        let f8 = fixtures::figure8();
        assert_eq!(bm_mass(&TreeSpec::Regular { q: 3 }, &f8).unwrap().exact, Some(rat(3, 4)));
        assert!(matches!(bm_mass(&TreeSpec::Regular { q: 2 }, &f8), Err(PerpError::DegreeMismatch(_))));
        let pet = fixtures::petersen();
        assert_eq!(bm_mass(&TreeSpec::Regular { q: 2 }, &pet).unwrap().exact, Some(rat(20, 3)));
    }

    #[test]
    fn bm_mass_biregular_is_tvol() {
        let g = fixtures::biregular23();
        let m = bm_mass(&TreeSpec::Biregular { p: 2, q: 3 }, &g).unwrap();
        assert_eq!(m.exact, Some(volumes(&g).tvol));
        assert_eq!(m.normalisation, Normalisation::DegOverSqrt);
    }

    #[test]
    fn spherically_symmetric_reduces() {
        // regular: every vertex is an orbit point, c_x = q/(q+1)
        let pet = fixtures::petersen();
        let s = TreeSpec::SphericallySymmetric { p: vec![2], period: 1, radii: vec![0; 10], root_mass: 1.0 };
        assert!((bm_mass(&s, &pet).unwrap().value - 20.0 / 3.0).abs() < 1e-12);
        // biregular seen from a p-vertex recovers TVol
        let g = fixtures::biregular23();
        let col = g.two_coloring().unwrap();
        let pclass = (0..g.num_vertices()).find(|&v| g.tree_degree(v) == 3).unwrap();
        let radii: Vec<usize> = (0..g.num_vertices()).map(|v| (col[v] != col[pclass]) as usize).collect();
        let s = TreeSpec::SphericallySymmetric { p: vec![2, 3], period: 2, radii, root_mass: 3.0 / 2f64.sqrt() };
        let tvol = volumes(&g).tvol.to_f64().unwrap();
        assert!((bm_mass(&s, &g).unwrap().value - tvol).abs() < 1e-10);
    }

    #[test]
    fn skinning_closed_forms() {
        let r2 = TreeSpec::Regular { q: 2 };
        assert!((skinning_mass(&r2, &SkinKind::Cycle { len: 3 }).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(skinning_mass(&r2, &SkinKind::Point { stabiliser: 1 }).unwrap(), 1.0);
        let b = TreeSpec::Biregular { p: 2, q: 3 };
        let v = skinning_mass(&b, &SkinKind::BiregularCycle { vp: 2, vq: 2 }).unwrap();
        assert!((v - (2.0 / 2f64.sqrt() + 4.0 / 3f64.sqrt())).abs() < 1e-14);
        assert!(skinning_mass(&r2, &SkinKind::BiregularCycle { vp: 1, vq: 1 }).is_err());
    }

    #[test]
    fn codegree_skinning_agrees_with_closed_forms() {
        let g = fixtures::biregular23();
        let b = TreeSpec::Biregular { p: 2, q: 3 };
        let y = g.subgraph("cycle4").unwrap();
        let v = skinning_mass_of(&b, &g, y).unwrap();
        assert!((v - skinning_mass(&b, &SkinKind::BiregularCycle { vp: 2, vq: 2 }).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn figure_eight_constant_is_two() {
        let g = fixtures::figure8();
        let r = theoretical_constant(&PerpQuery::named(&g, "A", "A", 15).unwrap(), 0.01).unwrap();
        assert!((r.constant - 2.0).abs() < 1e-12);
        assert!(r.pass);
    }

    #[test]
    fn petersen_constant() {
        let g = fixtures::petersen();
        let r = theoretical_constant(&PerpQuery::points(&g, 0, 5, 30), 0.03).unwrap();
        assert!((r.constant - 0.3).abs() < 1e-12);
        assert!(r.pass, "ratio {}", r.ratios[30]);
    }

    #[test]
    fn theta_bipartite_constant() {
        let g = fixtures::theta();
        let col = g.two_coloring().unwrap();
        let v = (1..g.num_vertices()).find(|&v| col[v] != col[0]).unwrap();
        let r = theoretical_constant(&PerpQuery::points(&g, 0, v, 31), 1e-6).unwrap();
        assert!(r.pass, "ratio {}", r.ratios[31]);
    }

    #[test]
    fn biregular_cycles_corrected_assembly() {
        let g = fixtures::biregular23();
        for n in [30, 31] {
            let r = theoretical_constant(&PerpQuery::named(&g, "cycle4", "cycle6", n).unwrap(), 0.05).unwrap();
            assert!(r.pass, "n={n} ratio {}", r.ratios[n]);
        }
    }
}
