use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Binomial, Distribution, Poisson};

use crate::error::{Error, Result};

/// Law of the number of replicas placed around one lattice site.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ReplicaLaw {
    Binomial { n: u64, p: f64 },
    Poisson { mean: f64 },
    /// `L = a` with probability `1/a`, else `L = 0`; then `N ~ Poisson(L)`.
    CoxBernoulli { a: f64 },
    /// `N = n * N'` with `N' ~ Poisson(1/n)`.
    ScaledPoisson { n: u64 },
}

impl ReplicaLaw {
    /// `Binomial(n, 1/n)`, the mean-one sub-Poisson family.
    pub fn binomial_unit_mean(n: u64) -> Self {
        ReplicaLaw::Binomial {
            n,
            p: 1.0 / n as f64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            ReplicaLaw::Binomial { n, p } => n >= 1 && (0.0..=1.0).contains(&p),
            ReplicaLaw::Poisson { mean } => mean >= 0.0 && mean.is_finite(),
            ReplicaLaw::CoxBernoulli { a } => a >= 1.0 && a.is_finite(),
            ReplicaLaw::ScaledPoisson { n } => n >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::param(format!("invalid replica law {self}")))
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            ReplicaLaw::Binomial { n, p } => n as f64 * p,
            ReplicaLaw::Poisson { mean } => mean,
            ReplicaLaw::CoxBernoulli { .. } | ReplicaLaw::ScaledPoisson { .. } => 1.0,
        }
    }

    /// File-name friendly label, e.g. `bin3` or `cox5`.
    pub fn slug(&self) -> String {
        match *self {
            ReplicaLaw::Binomial { n, p } if (n as f64 * p - 1.0).abs() < 1e-12 => format!("bin{n}"),
            ReplicaLaw::Binomial { n, p } => format!("bin{n}_p{p}"),
            ReplicaLaw::Poisson { mean } => format!("poi{mean}"),
            ReplicaLaw::CoxBernoulli { a } => format!("cox{a}"),
            ReplicaLaw::ScaledPoisson { n } => format!("scaledpoi{n}"),
        }
    }
}

impl ReplicaLaw {
    /// The form accepted by `FromStr`, e.g. `bin(2)` or `cox(5)`.
    pub fn config_form(&self) -> String {
        match *self {
            ReplicaLaw::Binomial { n, p } if (n as f64 * p - 1.0).abs() < 1e-12 => format!("bin({n})"),
            ReplicaLaw::Binomial { n, p } => format!("bin({n},{p})"),
            ReplicaLaw::Poisson { mean } => format!("poi({mean})"),
            ReplicaLaw::CoxBernoulli { a } => format!("cox({a})"),
            ReplicaLaw::ScaledPoisson { n } => format!("scaled({n})"),
        }
    }
}

impl fmt::Display for ReplicaLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ReplicaLaw::Binomial { n: 1, p: 1.0 } => f.write_str("Bin(1,1)"),
            ReplicaLaw::Binomial { n, p } if (n as f64 * p - 1.0).abs() < 1e-12 => {
                write!(f, "Bin({n},1/{n})")
            }
            ReplicaLaw::Binomial { n, p } => write!(f, "Bin({n},{p})"),
            ReplicaLaw::Poisson { mean } => write!(f, "Poi({mean})"),
            ReplicaLaw::CoxBernoulli { a } => write!(f, "Cox({a}xBin(1,1/{a}))"),
            ReplicaLaw::ScaledPoisson { n } => write!(f, "{n}xPoi(1/{n})"),
        }
    }
}

/// Parses `bin(n)`, `bin(n,p)`, `poi(m)`, `cox(a)` and `scaled(n)`.
impl FromStr for ReplicaLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::param(format!("cannot parse replica law {s:?}"));
        let t = s.trim().to_ascii_lowercase();
        let open = t.find('(').ok_or_else(bad)?;
        if !t.ends_with(')') {
            return Err(bad());
        }
        let name = t[..open].trim();
        let args: Vec<&str> = t[open + 1..t.len() - 1].split(',').map(str::trim).collect();
        let int = |v: &str| v.parse::<u64>().map_err(|_| bad());
        // accepts the `1/n` form used by `Display`
        let real = |v: &str| match v.split_once('/') {
            Some((a, b)) => Ok(a.trim().parse::<f64>().map_err(|_| bad())? / b.trim().parse::<f64>().map_err(|_| bad())?),
            None => v.parse::<f64>().map_err(|_| bad()),
        };
        let law = match (name, args.as_slice()) {
            ("bin" | "binomial", [n]) => ReplicaLaw::binomial_unit_mean(int(n)?),
            ("bin" | "binomial", [n, p]) => ReplicaLaw::Binomial {
                n: int(n)?,
                p: real(p)?,
            },
            ("poi" | "poisson", [m]) => ReplicaLaw::Poisson { mean: real(m)? },
            ("cox", [a]) => ReplicaLaw::CoxBernoulli { a: real(a)? },
            ("scaled", [n]) => ReplicaLaw::ScaledPoisson { n: int(n)? },
            _ => return Err(bad()),
        };
        law.validate()?;
        Ok(law)
    }
}

fn poisson_draw<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean).expect("finite positive mean").sample(rng) as u64
}

/// One draw from `law`. The law must be valid.
pub fn sample_replica_count<R: Rng + ?Sized>(law: &ReplicaLaw, rng: &mut R) -> u64 {
    match *law {
        ReplicaLaw::Binomial { n, p } => Binomial::new(n, p).expect("valid binomial").sample(rng),
        ReplicaLaw::Poisson { mean } => poisson_draw(mean, rng),
        ReplicaLaw::CoxBernoulli { a } => {
            let intensity = if rng.random::<f64>() < 1.0 / a { a } else { 0.0 };
            poisson_draw(intensity, rng)
        }
        ReplicaLaw::ScaledPoisson { n } => n * poisson_draw(1.0 / n as f64, rng),
    }
}
