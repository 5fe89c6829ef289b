//! EGK channel parameterization and the named preset catalog.

use std::path::Path;
use std::sync::LazyLock;

use serde::Deserialize;

use crate::specfun::ln_gamma;
use crate::{Error, Result};

/// Shadowing component: either absent (the multipath-only limit, where the
/// shadowing slot of the product degenerates to a constant) or a finite
/// generalized Nakagami-m factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shadowing {
    None,
    Finite { m_s: f64, xi_s: f64 },
}

/// The five EGK parameters. Invariants are enforced at construction:
/// `m >= 0.5`, `xi > 0`, `omega > 0`, and for finite shadowing
/// `m_s >= 0.5`, `xi_s > 0`. A shaping factor of exactly zero is rejected:
/// that limit requires a joint reparameterization (lognormal mixing) this
/// model does not operationalize.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    m: f64,
    xi: f64,
    shadowing: Shadowing,
    omega: f64,
}

impl ChannelParams {
    pub fn new(m: f64, xi: f64, shadowing: Shadowing, omega: f64) -> Result<Self> {
        if !(m >= 0.5) || !m.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "fading figure m must satisfy 0.5 <= m < inf, got {m}"
            )));
        }
        if !(xi > 0.0) || !xi.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "fading shaping factor xi must be positive and finite, got {xi} \
                 (the xi = 0 lognormal limit is not representable)"
            )));
        }
        if let Shadowing::Finite { m_s, xi_s } = shadowing {
            if !(m_s >= 0.5) || !m_s.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "shadowing figure m_s must satisfy 0.5 <= m_s < inf, got {m_s}"
                )));
            }
            if !(xi_s > 0.0) || !xi_s.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "shadowing shaping factor xi_s must be positive and finite, got {xi_s}"
                )));
            }
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "average power omega must be positive and finite, got {omega}"
            )));
        }
        Ok(Self {
            m,
            xi,
            shadowing,
            omega,
        })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn shadowing(&self) -> Shadowing {
        self.shadowing
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Same fading shape with a different mean power. SNR-domain statistics
    /// use this to re-scale the envelope law to a mean SNR.
    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(self.m, self.xi, self.shadowing, omega)
    }

    /// (m_s, xi_s) for finite shadowing.
    pub fn finite_shadowing(&self) -> Option<(f64, f64)> {
        match self.shadowing {
            Shadowing::Finite { m_s, xi_s } => Some((m_s, xi_s)),
            Shadowing::None => None,
        }
    }
}

/// The gamma-ratio normalizers `beta = G(m + 1/xi)/G(m)` and
/// `beta_s = G(m_s + 1/xi_s)/G(m_s)` (1 without shadowing); they make
/// `E[R^2] = omega` hold exactly.
#[derive(Debug, Clone, Copy)]
pub struct DerivedBetas {
    pub beta: f64,
    pub beta_s: f64,
}

pub fn derive_betas(p: &ChannelParams) -> DerivedBetas {
    let lg = |a: f64| ln_gamma(a).expect("arguments positive by ChannelParams invariants");
    let beta = (lg(p.m() + 1.0 / p.xi()) - lg(p.m())).exp();
    let beta_s = match p.shadowing() {
        Shadowing::Finite { m_s, xi_s } => (lg(m_s + 1.0 / xi_s) - lg(m_s)).exp(),
        Shadowing::None => 1.0,
    };
    DerivedBetas { beta, beta_s }
}

/// Mean-power split between the shadowing and multipath factors,
/// `omega_s * omega_x = omega`. First-order statistics do not depend on
/// the split; second-order statistics and the sampler take it explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaSplit {
    pub omega_s: f64,
    pub omega_x: f64,
}

impl OmegaSplit {
    pub fn new(omega_s: f64, omega_x: f64) -> Result<Self> {
        if !(omega_s > 0.0) || !(omega_x > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "omega split components must be positive, got ({omega_s}, {omega_x})"
            )));
        }
        Ok(Self { omega_s, omega_x })
    }

    /// Default split `(omega, 1)`.
    pub fn for_omega(omega: f64) -> Self {
        Self {
            omega_s: omega,
            omega_x: 1.0,
        }
    }

    pub fn product(&self) -> f64 {
        self.omega_s * self.omega_x
    }

    pub(crate) fn check_matches(&self, p: &ChannelParams) -> Result<()> {
        let rel = (self.product() - p.omega()).abs() / p.omega();
        if rel > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "omega split ({}, {}) has product {} but params carry omega {}",
                self.omega_s,
                self.omega_x,
                self.product(),
                p.omega()
            )));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Preset catalog
// ---------------------------------------------------------------------------

/// One parameter slot of a preset: pinned to a value or left free for the
/// caller to fill.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Slot {
    Fixed(f64),
    Free,
}

impl Slot {
    fn resolve(&self, name: &str, fill: Option<f64>) -> Result<f64> {
        match (self, fill) {
            (Slot::Fixed(v), None) => Ok(*v),
            (Slot::Fixed(v), Some(f)) if (f - v).abs() < 1e-12 => Ok(*v),
            (Slot::Fixed(v), Some(f)) => Err(Error::InvalidParameter(format!(
                "preset pins {name} = {v}; cannot override with {f}"
            ))),
            (Slot::Free, Some(f)) => Ok(f),
            (Slot::Free, None) => Err(Error::InvalidParameter(format!(
                "preset leaves {name} free; pass a value for it"
            ))),
        }
    }
}

/// Shadowing slots of a preset: absent or a (possibly free) finite pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShadowSlots {
    None,
    Finite { m_s: Slot, xi_s: Slot },
}

/// A named catalog row: a ChannelParams template with the mean power and
/// any free slots left open.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: String,
    pub source: String,
    pub m: Slot,
    pub xi: Slot,
    pub shadow: ShadowSlots,
}

/// Values for a preset's free slots.
#[derive(Debug, Clone, Copy, Default)]
pub struct PresetFill {
    pub m: Option<f64>,
    pub xi: Option<f64>,
    pub m_s: Option<f64>,
    pub xi_s: Option<f64>,
}

impl Preset {
    pub fn instantiate(&self, omega: f64, fill: &PresetFill) -> Result<ChannelParams> {
        let m = self.m.resolve("m", fill.m)?;
        let xi = self.xi.resolve("xi", fill.xi)?;
        let shadowing = match &self.shadow {
            ShadowSlots::None => {
                if fill.m_s.is_some() || fill.xi_s.is_some() {
                    return Err(Error::InvalidParameter(format!(
                        "preset `{}` has no shadowing component; drop m_s/xi_s",
                        self.name
                    )));
                }
                Shadowing::None
            }
            ShadowSlots::Finite { m_s, xi_s } => Shadowing::Finite {
                m_s: m_s.resolve("m_s", fill.m_s)?,
                xi_s: xi_s.resolve("xi_s", fill.xi_s)?,
            },
        };
        ChannelParams::new(m, xi, shadowing, omega)
    }

    /// True when every slot is pinned.
    pub fn is_fully_pinned(&self) -> bool {
        let pinned = |s: &Slot| matches!(s, Slot::Fixed(_));
        pinned(&self.m)
            && pinned(&self.xi)
            && match &self.shadow {
                ShadowSlots::None => true,
                ShadowSlots::Finite { m_s, xi_s } => pinned(m_s) && pinned(xi_s),
            }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SlotToml {
    Num(f64),
    Word(String),
}

#[derive(Debug, Deserialize)]
struct PresetToml {
    name: String,
    #[serde(default)]
    source: String,
    m: SlotToml,
    xi: SlotToml,
    ms: SlotToml,
    xis: SlotToml,
}

#[derive(Debug, Deserialize)]
struct CatalogToml {
    preset: Vec<PresetToml>,
}

fn parse_slot(raw: &SlotToml, field: &str, row: &str) -> Result<Slot> {
    match raw {
        SlotToml::Num(v) => Ok(Slot::Fixed(*v)),
        SlotToml::Word(w) if w == "free" => Ok(Slot::Free),
        SlotToml::Word(w) => Err(Error::PresetFile(format!(
            "row `{row}`: field {field} must be a number or \"free\", got \"{w}\""
        ))),
    }
}

/// The catalog of named parameter assignments, loadable from a TOML file
/// with one `[[preset]]` record per row.
#[derive(Debug, Clone)]
pub struct PresetCatalog {
    presets: Vec<Preset>,
}

impl PresetCatalog {
    fn from_toml_str(text: &str) -> Result<Self> {
        let raw: CatalogToml =
            toml::from_str(text).map_err(|e| Error::PresetFile(e.to_string()))?;
        let mut presets = Vec::with_capacity(raw.preset.len());
        for row in raw.preset {
            let m = parse_slot(&row.m, "m", &row.name)?;
            let xi = parse_slot(&row.xi, "xi", &row.name)?;
            let shadow = match (&row.ms, &row.xis) {
                (SlotToml::Word(a), SlotToml::Word(b)) if a == "none" && b == "none" => {
                    ShadowSlots::None
                }
                (SlotToml::Word(a), _) if a == "none" => {
                    return Err(Error::PresetFile(format!(
                        "row `{}`: ms = \"none\" requires xis = \"none\"",
                        row.name
                    )))
                }
                (ms, xis) => ShadowSlots::Finite {
                    m_s: parse_slot(ms, "ms", &row.name)?,
                    xi_s: parse_slot(xis, "xis", &row.name)?,
                },
            };
            if presets.iter().any(|p: &Preset| p.name == row.name) {
                return Err(Error::PresetFile(format!(
                    "duplicate preset name `{}`",
                    row.name
                )));
            }
            presets.push(Preset {
                name: row.name,
                source: row.source,
                m,
                xi,
                shadow,
            });
        }
        Ok(Self { presets })
    }

    /// Load a catalog from a TOML file of the shipped format.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    /// The catalog shipped with the crate (`data/presets.toml`).
    pub fn builtin() -> &'static PresetCatalog {
        static CATALOG: LazyLock<PresetCatalog> = LazyLock::new(|| {
            PresetCatalog::from_toml_str(include_str!("../data/presets.toml"))
                .expect("shipped preset catalog is valid")
        });
        &CATALOG
    }

    pub fn get(&self, name: &str) -> Option<&Preset> {
        self.presets.iter().find(|p| p.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Preset> {
        self.presets.iter()
    }

    pub fn len(&self) -> usize {
        self.presets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.presets.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.presets.iter().map(|p| p.name.as_str()).collect()
    }
}

/// Instantiate a builtin preset with every free slot supplied via `fill`.
pub fn preset_params(name: &str, omega: f64, fill: &PresetFill) -> Result<ChannelParams> {
    let catalog = PresetCatalog::builtin();
    match catalog.get(name) {
        Some(p) => p.instantiate(omega, fill),
        None => Err(Error::UnknownPreset {
            name: name.to_string(),
            available: catalog.names().join(", "),
        }),
    }
}

/// Instantiate a fully-pinned builtin preset.
pub fn preset(name: &str, omega: f64) -> Result<ChannelParams> {
    preset_params(name, omega, &PresetFill::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn betas_trivial_values() {
        let p = ChannelParams::new(1.0, 1.0, Shadowing::None, 1.0).unwrap();
        assert!((derive_betas(&p).beta - 1.0).abs() < 1e-14);

        let p = ChannelParams::new(0.5, 1.0, Shadowing::None, 1.0).unwrap();
        assert!((derive_betas(&p).beta - 0.5).abs() < 1e-14);

        let p = ChannelParams::new(1.0, 2.0, Shadowing::None, 1.0).unwrap();
        // Gamma(1.5) = sqrt(pi)/2.
        assert!((derive_betas(&p).beta - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-14);

        let p = ChannelParams::new(
            1.0,
            1.0,
            Shadowing::Finite {
                m_s: 1.0,
                xi_s: 1.0,
            },
            1.0,
        )
        .unwrap();
        assert!((derive_betas(&p).beta_s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn invariants_enforced() {
        assert!(ChannelParams::new(0.4, 1.0, Shadowing::None, 1.0).is_err());
        assert!(ChannelParams::new(1.0, 0.0, Shadowing::None, 1.0).is_err());
        assert!(ChannelParams::new(1.0, 1.0, Shadowing::None, 0.0).is_err());
        assert!(ChannelParams::new(
            1.0,
            1.0,
            Shadowing::Finite {
                m_s: 0.2,
                xi_s: 1.0
            },
            1.0
        )
        .is_err());
        assert!(ChannelParams::new(
            1.0,
            1.0,
            Shadowing::Finite {
                m_s: 1.0,
                xi_s: 0.0
            },
            1.0
        )
        .is_err());
    }

    #[test]
    fn builtin_catalog_rows() {
        let cat = PresetCatalog::builtin();
        assert!(cat.len() >= 15, "catalog has {} rows", cat.len());

        let ray = preset("rayleigh", 1.0).unwrap();
        assert_eq!(ray.m(), 1.0);
        assert_eq!(ray.xi(), 1.0);
        assert_eq!(ray.shadowing(), Shadowing::None);

        let gk = preset_params(
            "generalized-k",
            2.0,
            &PresetFill {
                m: Some(2.0),
                m_s: Some(1.5),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(gk.m(), 2.0);
        assert_eq!(gk.xi(), 1.0);
        assert_eq!(
            gk.shadowing(),
            Shadowing::Finite {
                m_s: 1.5,
                xi_s: 1.0
            }
        );

        let wg = preset_params(
            "weibull-gamma",
            1.0,
            &PresetFill {
                xi: Some(1.4),
                m_s: Some(2.0),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(wg.m(), 1.0);
        assert_eq!(wg.xi(), 1.4);
        assert_eq!(
            wg.shadowing(),
            Shadowing::Finite {
                m_s: 2.0,
                xi_s: 1.0
            }
        );

        let kd = preset_params(
            "k-distribution",
            1.0,
            &PresetFill {
                m: Some(2.5),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(
            kd.shadowing(),
            Shadowing::Finite {
                m_s: 1.0,
                xi_s: 1.0
            }
        );
    }

    #[test]
    fn unknown_preset_lists_names() {
        let err = preset("does-not-exist", 1.0).unwrap_err();
        match err {
            Error::UnknownPreset { available, .. } => {
                assert!(available.contains("rayleigh"));
                assert!(available.contains("generalized-k"));
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn free_slot_must_be_filled() {
        assert!(preset("generalized-k", 1.0).is_err());
    }

    #[test]
    fn catalog_roundtrips_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("presets.toml");
        std::fs::write(&path, include_str!("../data/presets.toml")).unwrap();
        let loaded = PresetCatalog::load(&path).unwrap();
        assert_eq!(loaded.len(), PresetCatalog::builtin().len());
    }

    #[test]
    fn omega_split_checks_product() {
        let p = ChannelParams::new(2.0, 1.0, Shadowing::None, 4.0).unwrap();
        assert!(OmegaSplit::new(2.0, 2.0).unwrap().check_matches(&p).is_ok());
        assert!(OmegaSplit::new(1.0, 1.0)
            .unwrap()
            .check_matches(&p)
            .is_err());
    }
}
