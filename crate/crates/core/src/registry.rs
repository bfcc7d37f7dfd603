//! Named strategies, looked up at run time by the CLI and tests.

use crate::conductor::{
    brute_force_sw, sw_curve, sw_log, AsPrinted, Character, NonLogVariant, OracleSpace, Shifted,
};
use crate::error::{Error, Result};
use crate::rings::{BoundaryLaurent, SeriesW};

/// A way of computing Swan conductors.
pub trait SwanMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn sw_boundary(&self, chi: &Character<BoundaryLaurent>) -> Result<u64>;
    fn sw_curve(&self, chi: &Character<SeriesW>) -> Result<u64>;
}

/// `(F-1)`-reduction followed by the truncation recursion.
#[derive(Clone, Copy, Debug, Default)]
pub struct ReductionMethod;

impl SwanMethod for ReductionMethod {
    fn name(&self) -> &'static str {
        "reduction"
    }
    fn describe(&self) -> &'static str {
        "leading-term (F-1)-reduction"
    }
    fn sw_boundary(&self, chi: &Character<BoundaryLaurent>) -> Result<u64> {
        Ok(sw_log(chi)?.sw)
    }
    fn sw_curve(&self, chi: &Character<SeriesW>) -> Result<u64> {
        Ok(sw_curve(chi)?.sw)
    }
}

/// Exhaustive search over a bounded box.
#[derive(Clone, Debug, Default)]
pub struct BruteForceMethod {
    pub space: OracleSpace,
}

impl SwanMethod for BruteForceMethod {
    fn name(&self) -> &'static str {
        "brute-force"
    }
    fn describe(&self) -> &'static str {
        "exhaustive minimum of Γ(x - (F-1)y) over a bounded box"
    }
    fn sw_boundary(&self, chi: &Character<BoundaryLaurent>) -> Result<u64> {
        brute_force_sw(chi, &self.space)
    }
    fn sw_curve(&self, chi: &Character<SeriesW>) -> Result<u64> {
        brute_force_sw(chi, &self.space)
    }
}

pub struct Registry {
    methods: Vec<Box<dyn SwanMethod>>,
    variants: Vec<Box<dyn NonLogVariant>>,
}

impl Default for Registry {
    fn default() -> Self {
        Registry::with_builtins()
    }
}

impl Registry {
    pub fn empty() -> Registry {
        Registry {
            methods: Vec::new(),
            variants: Vec::new(),
        }
    }

    pub fn with_builtins() -> Registry {
        let mut r = Registry::empty();
        r.register_method(Box::new(ReductionMethod));
        r.register_method(Box::new(BruteForceMethod::default()));
        r.register_variant(Box::new(Shifted));
        r.register_variant(Box::new(AsPrinted));
        r
    }

    /// Later registrations shadow earlier ones with the same name.
    pub fn register_method(&mut self, m: Box<dyn SwanMethod>) {
        self.methods.retain(|x| x.name() != m.name());
        self.methods.push(m);
    }

    pub fn register_variant(&mut self, v: Box<dyn NonLogVariant>) {
        self.variants.retain(|x| x.name() != v.name());
        self.variants.push(v);
    }

    pub fn method(&self, name: &str) -> Result<&dyn SwanMethod> {
        self.methods
            .iter()
            .find(|m| m.name() == name)
            .map(|m| m.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "method",
                name: name.to_string(),
            })
    }

    pub fn variant(&self, name: &str) -> Result<&dyn NonLogVariant> {
        self.variants
            .iter()
            .find(|v| v.name() == name)
            .map(|v| v.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "non-log variant",
                name: name.to_string(),
            })
    }

    pub fn method_names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }

    pub fn variant_names(&self) -> Vec<&'static str> {
        self.variants.iter().map(|v| v.name()).collect()
    }
}
