//! Standalone certificate checker. It rebuilds the point set from decoded
//! exponent vectors and walks each interval itself, so it trusts nothing
//! computed by the search.

use std::collections::HashSet;

use thiserror::Error;

use super::{CharPoset, StanleyCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate is for {found} variables, poset has {expected}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("certificate box g does not match the poset")]
    BoxMismatch,
    #[error("interval {index} is not a ≤ b ≤ g")]
    NotAnInterval { index: usize },
    #[error("interval {index} has ρ(b) = {rho} below the claimed {claimed}")]
    RhoTooSmall { index: usize, rho: usize, claimed: usize },
    #[error("interval {index} contains {point:?}, which is not in the poset")]
    OutsidePoset { index: usize, point: Vec<u32> },
    #[error("interval {index} overlaps an earlier interval at {point:?}")]
    Overlap { index: usize, point: Vec<u32> },
    #[error("{missing} poset points are not covered")]
    Uncovered { missing: usize },
}

pub fn verify_certificate(poset: &CharPoset, cert: &StanleyCertificate) -> bool {
    check_certificate(poset, cert).is_ok()
}

/// Checks disjointness, exact cover and `min ρ(b) ≥ claimed_d`.
pub fn check_certificate(poset: &CharPoset, cert: &StanleyCertificate) -> Result<(), CertificateError> {
    let g = poset.g();
    if cert.g.len() != g.len() || cert.vars.len() != g.len() {
        return Err(CertificateError::AmbientMismatch {
            expected: g.len(),
            found: cert.g.len(),
        });
    }
    if cert.g != g || cert.vars != *poset.vars() {
        return Err(CertificateError::BoxMismatch);
    }
    let universe: HashSet<Vec<u32>> = poset.points().collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::with_capacity(universe.len());
    for (index, iv) in cert.intervals.iter().enumerate() {
        let ok = iv.a.len() == g.len()
            && iv.b.len() == g.len()
            && iv.a.iter().zip(&iv.b).zip(g).all(|((a, b), g)| a <= b && b <= g);
        if !ok {
            return Err(CertificateError::NotAnInterval { index });
        }
        let rho = iv.b.iter().zip(g).filter(|(b, g)| b == g).count();
        if rho < cert.claimed_d {
            return Err(CertificateError::RhoTooSmall {
                index,
                rho,
                claimed: cert.claimed_d,
            });
        }
        // odometer over the box [a, b]
        let mut c = iv.a.clone();
        loop {
            if !universe.contains(&c) {
                return Err(CertificateError::OutsidePoset { index, point: c });
            }
            if !seen.insert(c.clone()) {
                return Err(CertificateError::Overlap { index, point: c });
            }
            let mut j = 0;
            while j < c.len() {
                if c[j] < iv.b[j] {
                    c[j] += 1;
                    break;
                }
                c[j] = iv.a[j];
                j += 1;
            }
            if j == c.len() {
                break;
            }
        }
    }
    if seen.len() != universe.len() {
        return Err(CertificateError::Uncovered {
            missing: universe.len() - seen.len(),
        });
    }
    Ok(())
}
