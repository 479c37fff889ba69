//! Sphere and combinatorial-manifold recognition by flip reduction.

use rayon::prelude::*;
use serde::Serialize;

use super::search::{reduce_search, SearchConfig};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::homology::{homology, Ring};

/// Outcome of sphere recognition. A failed search never disproves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum SphereVerdict {
    Sphere,
    NotSphere(String),
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereCertificate {
    pub verdict: SphereVerdict,
    pub moves: u64,
    pub final_vertices: usize,
}

/// Decides whether `x` is bistellarly equivalent to the boundary of a
/// simplex, using `cfg` as the search budget.
pub fn certify_sphere(x: &Complex, cfg: &SearchConfig) -> Result<SphereCertificate> {
    if !x.pseudomanifold_check().is_closed_pseudomanifold() {
        return Err(Error::NotClosedPseudomanifold);
    }
    let n = x.num_vertices();
    let done = |verdict, moves, final_vertices| SphereCertificate {
        verdict,
        moves,
        final_vertices,
    };
    if !homology(x, Ring::Gf2)?.is_sphere_like() {
        return Ok(done(SphereVerdict::NotSphere("homology".into()), 0, n));
    }
    // a 0-sphere is a pair of points, which the homology check has settled
    if x.dim() == 0 || x.is_standard_sphere() {
        return Ok(done(SphereVerdict::Sphere, 0, n));
    }
    let cfg = SearchConfig {
        target_vertices: Some(x.dim() as usize + 2),
        ..cfg.clone()
    };
    let out = reduce_search(x, &cfg)?;
    let verdict = if out.complex.is_standard_sphere() {
        SphereVerdict::Sphere
    } else {
        SphereVerdict::Unknown
    };
    Ok(done(verdict, out.moves_applied, out.complex.num_vertices()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ManifoldVerdict {
    Manifold,
    NotManifold,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkReport {
    pub vertex: String,
    #[serde(flatten)]
    pub certificate: SphereCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifoldReport {
    pub verdict: ManifoldVerdict,
    pub links: Vec<LinkReport>,
}

/// Certifies every vertex link as a sphere. Link searches are independent
/// and seeded with `cfg.seed + vertex index`.
pub fn certify_manifold(x: &Complex, cfg: &SearchConfig) -> Result<ManifoldReport> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !x.is_pure() {
        return Err(Error::NotPure);
    }
    let links: Vec<LinkReport> = (0..x.num_vertices() as u32)
        .into_par_iter()
        .map(|v| {
            let link = x.link(&[v])?;
            let certificate = if !link.pseudomanifold_check().is_closed_pseudomanifold() {
                SphereCertificate {
                    verdict: SphereVerdict::NotSphere("link is not a closed pseudomanifold".into()),
                    moves: 0,
                    final_vertices: link.num_vertices(),
                }
            } else {
                let cfg = SearchConfig {
                    seed: cfg.seed.wrapping_add(v as u64),
                    ..cfg.clone()
                };
                certify_sphere(&link, &cfg)?
            };
            Ok(LinkReport {
                vertex: x.vertices().label(v).to_string(),
                certificate,
            })
        })
        .collect::<Result<_>>()?;
    let verdict = if links
        .iter()
        .any(|l| matches!(l.certificate.verdict, SphereVerdict::NotSphere(_)))
    {
        ManifoldVerdict::NotManifold
    } else if links
        .iter()
        .all(|l| l.certificate.verdict == SphereVerdict::Sphere)
    {
        ManifoldVerdict::Manifold
    } else {
        ManifoldVerdict::Unknown
    };
    Ok(ManifoldReport { verdict, links })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{parse_facets, StandardKind};

    #[test]
    fn standard_and_subdivided_spheres() {
        let cfg = SearchConfig {
            max_moves: Some(50_000),
            ..SearchConfig::with_seed(5)
        };
        let s = Complex::standard(StandardKind::Sphere, 2).unwrap();
        assert_eq!(
            certify_sphere(&s, &cfg).unwrap().verdict,
            SphereVerdict::Sphere
        );
        let b = Complex::standard(StandardKind::Sphere, 3)
            .unwrap()
            .barycentric_subdivision();
        let c = certify_sphere(&b, &cfg).unwrap();
        assert_eq!(c.verdict, SphereVerdict::Sphere);
        assert_eq!(c.final_vertices, 5);
    }

    #[test]
    fn torus_is_rejected_by_homology() {
        let c = parse_facets("1 2\n2 3\n1 3").unwrap().complex;
        let t = c.staircase_product_default(&c).unwrap();
        let cert = certify_sphere(&t, &SearchConfig::with_seed(1)).unwrap();
        assert_eq!(cert.verdict, SphereVerdict::NotSphere("homology".into()));
    }

    #[test]
    fn manifold_examples() {
        let cfg = SearchConfig {
            max_moves: Some(10_000),
            ..SearchConfig::with_seed(2)
        };
        let s3 = Complex::standard(StandardKind::Sphere, 3).unwrap();
        assert_eq!(
            certify_manifold(&s3, &cfg).unwrap().verdict,
            ManifoldVerdict::Manifold
        );
        let bowtie = parse_facets("1 2 3\n1 4 5").unwrap().complex;
        assert_eq!(
            certify_manifold(&bowtie, &cfg).unwrap().verdict,
            ManifoldVerdict::NotManifold
        );
    }
}
