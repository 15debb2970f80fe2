use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The constant chain `0 < ε < η < γ < γ′ < ρ < τ < 1`. Only the strict
/// ordering is enforced; the finite-`n` procedures treat these as tunable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofParams {
    pub epsilon: BigRational,
    pub eta: BigRational,
    pub gamma: BigRational,
    pub gamma_prime: BigRational,
    pub rho: BigRational,
    pub tau: BigRational,
}

fn r(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

impl Default for ProofParams {
    fn default() -> Self {
        ProofParams {
            epsilon: r(1, 100),
            eta: r(1, 50),
            gamma: r(1, 25),
            gamma_prime: r(1, 20),
            rho: r(1, 10),
            tau: r(1, 5),
        }
    }
}

impl ProofParams {
    pub fn new(
        epsilon: BigRational,
        eta: BigRational,
        gamma: BigRational,
        gamma_prime: BigRational,
        rho: BigRational,
        tau: BigRational,
    ) -> Result<Self> {
        let p = ProofParams {
            epsilon,
            eta,
            gamma,
            gamma_prime,
            rho,
            tau,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let chain = [
            r(0, 1),
            self.epsilon.clone(),
            self.eta.clone(),
            self.gamma.clone(),
            self.gamma_prime.clone(),
            self.rho.clone(),
            self.tau.clone(),
            r(1, 1),
        ];
        if chain.windows(2).all(|w| w[0] < w[1]) {
            Ok(())
        } else {
            Err(Error::InvalidParams(
                "constants must satisfy 0 < eps < eta < gamma < gamma' < rho < tau < 1".into(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_chain_is_increasing() {
        ProofParams::default().validate().unwrap();
    }

    #[test]
    fn out_of_order_chain_is_rejected() {
        let d = ProofParams::default();
        let bad = ProofParams::new(
            d.eta.clone(),
            d.epsilon.clone(),
            d.gamma.clone(),
            d.gamma_prime.clone(),
            d.rho.clone(),
            d.tau.clone(),
        );
        assert!(bad.is_err());
        let mut equal = d.clone();
        equal.tau = r(1, 1);
        assert!(equal.validate().is_err());
    }
}
