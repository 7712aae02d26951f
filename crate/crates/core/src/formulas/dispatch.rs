//! Picking the cheapest applicable evaluation route for a configuration.

use serde::{Deserialize, Serialize};

use super::families::{a_almost_lukasiewicz, a_connected, a_lukasiewicz, a_weakly_lukasiewicz};
use super::one_hole::a_one_hole;
use super::FormulaError;
use crate::config::{Classification, Configuration};
use crate::engine::{remixed_exact, remixed_induction};
use crate::qcalc::QPoly;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Lukasiewicz,
    AlmostLukasiewicz,
    Connected,
    OneHole,
    WeaklyLukasiewicz,
    Induction,
    Exact,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Lukasiewicz => "lukasiewicz",
            Method::AlmostLukasiewicz => "almost_lukasiewicz",
            Method::Connected => "connected",
            Method::OneHole => "one_hole",
            Method::WeaklyLukasiewicz => "weakly_lukasiewicz",
            Method::Induction => "induction",
            Method::Exact => "exact",
        }
    }

    pub fn is_formula(self) -> bool {
        !matches!(self, Method::Induction | Method::Exact)
    }
}

/// What the caller asks for.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum MethodChoice {
    /// Closed form if one applies, induction otherwise.
    #[default]
    Auto,
    Exact,
    Induction,
    /// Closed form or [`FormulaError::NoFormula`].
    Formula,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossCheck {
    Pass,
    Skip,
    Fail,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EvalReport {
    pub config: Vec<usize>,
    pub method: Method,
    pub poly: QPoly,
    pub flags: Classification,
    pub crosscheck: CrossCheck,
    /// The independent value the result was compared against, on failure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<QPoly>,
    /// q-bracket form, for product-type closed forms.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factored: Option<String>,
}

/// The most specific closed form for `c`, if any.
pub fn best_formula(c: &Configuration) -> Option<(Method, QPoly)> {
    let flags = c.classify();
    let core = c.core();
    let result = if flags.is_lukasiewicz {
        (Method::Lukasiewicz, a_lukasiewicz(c))
    } else if flags.almost_defect.is_some() {
        (Method::AlmostLukasiewicz, a_almost_lukasiewicz(c))
    } else if flags.is_connected {
        (Method::Connected, a_connected(&core.gamma, core.leading, c.n()))
    } else if flags.is_one_hole {
        (Method::OneHole, a_one_hole(c))
    } else if flags.is_weakly_lukasiewicz {
        (Method::WeaklyLukasiewicz, a_weakly_lukasiewicz(&core.gamma, core.leading, c.n()))
    } else {
        return None;
    };
    let (method, poly) = result;
    Some((method, poly.expect("classification guarantees the precondition")))
}

/// Closed form when available, induction otherwise; no cross-check.
pub fn dispatch(c: &Configuration) -> EvalReport {
    evaluate(c, MethodChoice::Auto, false).expect("auto evaluation always succeeds")
}

/// Evaluates `c` by the chosen route. With `crosscheck`, the result is
/// compared with the drop-dynamics oracle (or, for the oracle itself, with
/// the induction); both run concurrently.
pub fn evaluate(c: &Configuration, choice: MethodChoice, crosscheck: bool) -> Result<EvalReport, FormulaError> {
    let primary = || -> Result<(Method, QPoly), FormulaError> {
        Ok(match choice {
            MethodChoice::Exact => (Method::Exact, remixed_exact(c)?),
            MethodChoice::Induction => (Method::Induction, remixed_induction(c)),
            MethodChoice::Formula => best_formula(c).ok_or(FormulaError::NoFormula)?,
            MethodChoice::Auto => best_formula(c).unwrap_or_else(|| (Method::Induction, remixed_induction(c))),
        })
    };
    let secondary = || -> Result<QPoly, FormulaError> {
        Ok(match choice {
            MethodChoice::Exact => remixed_induction(c),
            _ => remixed_exact(c)?,
        })
    };
    let ((method, poly), reference) = if crosscheck {
        let (a, b) = std::thread::scope(|scope| {
            let other = scope.spawn(secondary);
            (primary(), other.join().expect("cross-check thread panicked"))
        });
        (a?, Some(b?))
    } else {
        (primary()?, None)
    };
    let crosscheck = match &reference {
        None => CrossCheck::Skip,
        Some(r) if *r == poly => CrossCheck::Pass,
        Some(_) => CrossCheck::Fail,
    };
    let flags = c.classify();
    Ok(EvalReport {
        config: c.sites().to_vec(),
        factored: factored_form(c, method, &flags),
        method,
        poly,
        flags,
        reference: reference.filter(|_| crosscheck == CrossCheck::Fail),
        crosscheck,
    })
}

/// `[a]^k` runs for a sorted multiset of bracket arguments.
fn brackets(args: impl IntoIterator<Item = usize>) -> String {
    let mut args: Vec<usize> = args.into_iter().collect();
    args.sort_unstable();
    let mut out = String::new();
    let mut k = 0;
    while k < args.len() {
        let run = args[k..].iter().take_while(|&&a| a == args[k]).count();
        out.push_str(&format!("[{}]", args[k]));
        if run > 1 {
            out.push_str(&format!("^{run}"));
        }
        k += run;
    }
    out
}

fn factored_form(c: &Configuration, method: Method, flags: &Classification) -> Option<String> {
    let mset = c.left_to_right_order();
    match method {
        Method::Lukasiewicz => Some(brackets(mset)),
        Method::AlmostLukasiewicz => {
            let j = flags.almost_defect?;
            let below = brackets(mset.iter().copied().filter(|&a| a < j));
            let above = brackets(mset.iter().filter(|&&b| b > j).map(|&b| b - j));
            Some(format!("{} - [{} choose {}]{}{}", brackets(mset.iter().copied()), c.n() + 1, j, below, above))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn method_choice() {
        assert_eq!(dispatch(&cfg("3,0,0,2,0")).method, Method::Lukasiewicz);
        assert_eq!(dispatch(&cfg("0,1,2,2,0")).method, Method::Connected);
        assert_eq!(dispatch(&cfg("1,0,3,0,1")).method, Method::AlmostLukasiewicz);
        assert_eq!(dispatch(&cfg("0,2,1,0,3,0")).method, Method::OneHole);
        // Defect at site 1; the almost-Lukasiewicz form is preferred over
        // the weakly Lukasiewicz sum.
        assert_eq!(dispatch(&cfg("0,3,0,2,0")).method, Method::AlmostLukasiewicz);
        let other = cfg("0,0,3,0,0,3");
        assert!(!other.classify().is_weakly_lukasiewicz);
        assert_eq!(dispatch(&other).method, Method::Induction);
    }

    #[test]
    fn crosscheck_passes() {
        for s in ["3,0,0,2,0", "0,1,2,2,0", "0,2,1,0,3,0", "0,0,3,0,0,3"] {
            let r = evaluate(&cfg(s), MethodChoice::Auto, true).unwrap();
            assert_eq!(r.crosscheck, CrossCheck::Pass, "{s}");
            assert!(r.reference.is_none());
        }
        let r = evaluate(&cfg("2,0,1"), MethodChoice::Exact, true).unwrap();
        assert_eq!((r.method, r.crosscheck), (Method::Exact, CrossCheck::Pass));
        assert_eq!(dispatch(&cfg("1,1")).crosscheck, CrossCheck::Skip);
    }

    #[test]
    fn formula_choice_needs_a_family() {
        let c = cfg("0,0,3,0,0,3");
        assert_eq!(evaluate(&c, MethodChoice::Formula, false), Err(FormulaError::NoFormula));
    }

    #[test]
    fn factored_strings() {
        assert_eq!(dispatch(&cfg("3,0,0,2,0")).factored.as_deref(), Some("[1]^3[4]^2"));
        assert_eq!(
            dispatch(&cfg("1,0,3,0,1")).factored.as_deref(),
            Some("[1][3]^3[5] - [6 choose 2][1][1]^3[3]")
        );
        assert_eq!(dispatch(&cfg("0,1,2,2,0")).factored, None);
    }

    #[test]
    fn report_json_shape() {
        let r = dispatch(&cfg("1,1"));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["config"], serde_json::json!([1, 1]));
        assert_eq!(v["method"], "lukasiewicz");
        assert_eq!(v["crosscheck"], "skip");
        assert!(v["flags"]["is_connected"].as_bool().unwrap());
        assert!(v.get("reference").is_none());
    }
}
