use std::fmt;

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::seeding::{rng_from_seed, site_rng};

use super::hexagon::sample_uniform_in_hexagon;
use super::lattice::Lattice;
use super::replica::{sample_replica_count, ReplicaLaw};
use super::window::{BoundaryMode, Point, Window};

/// Which generator produced a pattern, and from which seed.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub generator: String,
    pub seed: Option<u64>,
}

/// Finite planar point set inside a window.
#[derive(Clone, Debug, PartialEq)]
pub struct PointPattern<T> {
    pub points: Vec<Point<T>>,
    pub window: Window<T>,
    pub provenance: Provenance,
}

impl<T: Scalar> PointPattern<T> {
    /// Builds a pattern, rejecting points outside the window.
    pub fn new(points: Vec<Point<T>>, window: Window<T>, provenance: Provenance) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| !window.contains(p)) {
            return Err(Error::geometry(format!(
                "point ({}, {}) lies outside the window",
                p.x, p.y
            )));
        }
        Ok(Self {
            points,
            window,
            provenance,
        })
    }

    /// Pattern with ad-hoc provenance, for hand-built inputs.
    pub fn from_points(points: Vec<Point<T>>, window: Window<T>) -> Result<Self> {
        Self::new(
            points,
            window,
            Provenance {
                generator: "explicit".into(),
                seed: None,
            },
        )
    }

    pub fn empty(window: Window<T>) -> Self {
        Self {
            points: Vec::new(),
            window,
            provenance: Provenance {
                generator: "empty".into(),
                seed: None,
            },
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn empirical_intensity(&self) -> T {
        T::from_count(self.len()) / self.window.area()
    }
}

/// Homogeneous Poisson process of `intensity` points per unit area.
pub fn sample_homogeneous_poisson<T: Scalar>(
    intensity: T,
    window: &Window<T>,
    seed: u64,
) -> Result<PointPattern<T>> {
    if !(intensity >= T::zero()) || !intensity.is_finite() {
        return Err(Error::param(format!("intensity must be >= 0, got {intensity}")));
    }
    let mut rng = rng_from_seed(seed);
    let mean = (intensity * window.area()).as_f64();
    let count = if mean > 0.0 {
        Poisson::new(mean)
            .map_err(|e| Error::param(format!("poisson mean {mean}: {e}")))?
            .sample(&mut rng) as usize
    } else {
        0
    };
    let points = (0..count)
        .map(|_| {
            Point::new(
                rng.random_range(window.x_min..window.x_max),
                rng.random_range(window.y_min..window.y_max),
            )
        })
        .map(|p| window.wrap(p))
        .collect();
    Ok(PointPattern {
        points,
        window: *window,
        provenance: Provenance {
            generator: format!("poisson(intensity={intensity})"),
            seed: Some(seed),
        },
    })
}

/// All lattice sites inside the window.
pub fn triangular_lattice_pattern<T: Scalar>(
    lattice: &Lattice<T>,
    window: &Window<T>,
) -> PointPattern<T> {
    let points = lattice.sites_in(window).into_iter().map(|s| s.position).collect();
    PointPattern {
        points,
        window: *window,
        provenance: Provenance {
            generator: format!("triangular_lattice(spacing={})", lattice.spacing),
            seed: None,
        },
    }
}

/// Replica count drawn at one lattice site.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SiteDraw {
    pub i: i64,
    pub j: i64,
    pub replicas: u64,
    /// Whether the site itself lies in the window.
    pub inside: bool,
}

/// A perturbed-lattice realization together with its per-site replica counts.
#[derive(Clone, Debug)]
pub struct PerturbedSample<T> {
    pub pattern: PointPattern<T>,
    pub sites: Vec<SiteDraw>,
}

/// Perturbed lattice keeping the per-site replica draws.
///
/// Each site draws its replica count and displacements from its own
/// substream, so the result only depends on `(lattice, law, window, seed)`.
/// On a torus the sites in the window are used and displaced replicas wrap
/// around; with a free boundary every site whose hexagon can reach the window
/// contributes and replicas falling outside are dropped.
pub fn sample_perturbed_lattice_detailed<T: Scalar>(
    lattice: &Lattice<T>,
    law: &ReplicaLaw,
    window: &Window<T>,
    seed: u64,
) -> Result<PerturbedSample<T>> {
    law.validate()?;
    let sites = match window.boundary {
        BoundaryMode::Torus => lattice.sites_in(window),
        BoundaryMode::Free => lattice.sites_touching(window),
    };
    if !sites.iter().any(|s| window.contains(&s.position)) {
        return Err(Error::geometry("window contains no lattice site"));
    }
    let apothem = lattice.apothem();
    let mut points = Vec::with_capacity(sites.len());
    let mut draws = Vec::with_capacity(sites.len());
    for site in &sites {
        let mut rng = site_rng(seed, site.i, site.j);
        let replicas = sample_replica_count(law, &mut rng);
        for _ in 0..replicas {
            let p = sample_uniform_in_hexagon(&site.position, apothem, &mut rng);
            match window.boundary {
                BoundaryMode::Torus => points.push(window.wrap(p)),
                BoundaryMode::Free => {
                    if window.contains(&p) {
                        points.push(p);
                    }
                }
            }
        }
        draws.push(SiteDraw {
            i: site.i,
            j: site.j,
            replicas,
            inside: window.contains(&site.position),
        });
    }
    Ok(PerturbedSample {
        pattern: PointPattern {
            points,
            window: *window,
            provenance: Provenance {
                generator: format!(
                    "perturbed_lattice(spacing={}, law={law})",
                    lattice.spacing
                ),
                seed: Some(seed),
            },
        },
        sites: draws,
    })
}

pub fn sample_perturbed_lattice<T: Scalar>(
    lattice: &Lattice<T>,
    law: &ReplicaLaw,
    window: &Window<T>,
    seed: u64,
) -> Result<PointPattern<T>> {
    sample_perturbed_lattice_detailed(lattice, law, window, seed).map(|s| s.pattern)
}

/// Seeded source of point patterns.
pub trait PatternSource<T: Scalar>: Sync {
    fn generate(&self, seed: u64) -> Result<PointPattern<T>>;

    /// Nominal intensity of the generated patterns.
    fn intensity(&self) -> T;

    fn window(&self) -> Window<T>;
}

/// The generator families used throughout the experiments.
#[derive(Clone, Debug, PartialEq)]
pub enum PatternGenerator<T> {
    Poisson {
        intensity: T,
        window: Window<T>,
    },
    Lattice {
        lattice: Lattice<T>,
        window: Window<T>,
    },
    Perturbed {
        lattice: Lattice<T>,
        law: ReplicaLaw,
        window: Window<T>,
    },
}

impl<T: Scalar> PatternGenerator<T> {
    /// Short label used in file names and seed derivation.
    pub fn slug(&self) -> String {
        match self {
            PatternGenerator::Poisson { .. } => "poisson".into(),
            PatternGenerator::Lattice { .. } => "lattice".into(),
            PatternGenerator::Perturbed { law, .. } => law.slug(),
        }
    }
}

impl<T: Scalar> fmt::Display for PatternGenerator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternGenerator::Poisson { intensity, .. } => write!(f, "Poisson({intensity})"),
            PatternGenerator::Lattice { .. } => f.write_str("lattice"),
            PatternGenerator::Perturbed { law, .. } => write!(f, "{law}"),
        }
    }
}

impl<T: Scalar> PatternSource<T> for PatternGenerator<T> {
    fn generate(&self, seed: u64) -> Result<PointPattern<T>> {
        match self {
            PatternGenerator::Poisson { intensity, window } => {
                sample_homogeneous_poisson(*intensity, window, seed)
            }
            PatternGenerator::Lattice { lattice, window } => {
                Ok(triangular_lattice_pattern(lattice, window))
            }
            PatternGenerator::Perturbed {
                lattice,
                law,
                window,
            } => sample_perturbed_lattice(lattice, law, window, seed),
        }
    }

    fn intensity(&self) -> T {
        match self {
            PatternGenerator::Poisson { intensity, .. } => *intensity,
            PatternGenerator::Lattice { lattice, .. } => lattice.intensity(),
            PatternGenerator::Perturbed { lattice, law, .. } => {
                lattice.intensity() * T::lit(law.mean())
            }
        }
    }

    fn window(&self) -> Window<T> {
        match self {
            PatternGenerator::Poisson { window, .. }
            | PatternGenerator::Lattice { window, .. }
            | PatternGenerator::Perturbed { window, .. } => *window,
        }
    }
}
