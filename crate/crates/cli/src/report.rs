use serde::Serialize;
use serde_json::{Map, Value};

/// Rounds to 9 significant digits so output is stable across platforms.
pub fn sig9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

/// CSV field text: plain decimals for moderate magnitudes, exponent form
/// otherwise.
pub fn fmt_num(x: f64) -> String {
    let r = sig9(x);
    if r == 0.0 {
        return "0".into();
    }
    let a = r.abs();
    if (1e-4..1e9).contains(&a) || !a.is_finite() {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(sig9(x)).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub tolerance: Value,
    pub pass: bool,
}

/// JSON document with `inputs`, `results` and `checks`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.into(), value.into());
        self
    }

    /// Absolute comparison `|actual - expected| <= tolerance`.
    pub fn check_abs(
        &mut self,
        name: impl Into<String>,
        expected: f64,
        actual: f64,
        tolerance: f64,
    ) {
        let pass = (actual - expected).abs() <= tolerance;
        self.push(name.into(), expected, actual, tolerance, pass);
    }

    /// Relative comparison against `expected`.
    pub fn check_rel(
        &mut self,
        name: impl Into<String>,
        expected: f64,
        actual: f64,
        tolerance: f64,
    ) {
        let pass = (actual - expected).abs() <= tolerance * expected.abs();
        self.push(name.into(), expected, actual, tolerance, pass);
    }

    /// `actual <= limit`.
    pub fn check_below(&mut self, name: impl Into<String>, actual: f64, limit: f64) {
        self.push(name.into(), 0.0, actual, limit, actual <= limit);
    }

    fn push(&mut self, name: String, expected: f64, actual: f64, tolerance: f64, pass: bool) {
        self.checks.push(Check {
            name,
            expected: num(expected),
            actual: num(actual),
            tolerance: num(tolerance),
            pass,
        });
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }
}
