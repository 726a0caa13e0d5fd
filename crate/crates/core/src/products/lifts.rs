//! Specializations of the general maps `G, R, T, F` from cocycles, actions
//! and trivial data.

use crate::bundle::StructureBundle;
use crate::error::{Error, Result};
use crate::products::formula::eval_formula;

pub const G_FROM_SIGMA: &str = "sigma(x_1, x'_1) % x_2 x'_2";
pub const G_TRIVIAL: &str = "1_A % x x'";
pub const R_CROSSED: &str = "x_1 |> a % x_2";
pub const R_UNIFIED: &str = "x_1 |> a_1 % x_2 <| a_2";
pub const R_TRIVIAL: &str = "a % x";
pub const F_FROM_TAU: &str = "x_1 x'_1 % tau(x_2, x'_2)";
pub const F_TRIVIAL: &str = "x x' % 1_B";
pub const T_CROSSED: &str = "x_1 % b <| x_2";
pub const T_UNIFIED: &str = "b_1 |> x_1 % b_2 <| x_2";
pub const T_TRIVIAL: &str = "x % b";
pub const SIGMA_TRIVIAL: &str = "eps(x) eps(x') 1_A";
pub const TAU_TRIVIAL: &str = "eps(x) eps(x') 1_B";

/// How each general map is obtained; `None` keeps the bound map.
#[derive(Clone, Copy, Debug, Default)]
pub struct LiftRecipe {
    pub g: Option<&'static str>,
    pub r: Option<&'static str>,
    pub t: Option<&'static str>,
    pub f: Option<&'static str>,
    pub sigma: Option<&'static str>,
    pub tau: Option<&'static str>,
}

fn order_of(name: &str) -> &'static [&'static str] {
    match name {
        "G" | "F" | "sigma" | "tau" => &["x", "x'"],
        "R" => &["x", "a"],
        _ => &["b", "x"],
    }
}

impl LiftRecipe {
    /// Applies the recipe; cocycles are replaced first so that the other
    /// maps are derived from the replaced ones.
    pub fn apply(&self, bundle: &StructureBundle) -> Result<StructureBundle> {
        let mut out = bundle.clone();
        let steps = [
            ("sigma", self.sigma),
            ("tau", self.tau),
            ("G", self.g),
            ("R", self.r),
            ("T", self.t),
            ("F", self.f),
        ];
        for (name, formula) in steps {
            if let Some(text) = formula {
                let m = eval_formula(&out, text, order_of(name))?;
                out.set_map(name, m)?;
            }
        }
        Ok(out)
    }
}

pub const LEFT_KINDS: [&str; 5] = ["twisted_crossed", "crossed", "twisted", "unified", "twisted_tensor"];
pub const RIGHT_KINDS: [&str; 6] = ["twisted_crossed", "unified", "f_twist", "twist", "twisted_tensor", "crossed"];
pub const TWO_SIDED_KINDS: [&str; 4] = ["twisted_crossed", "twisted", "twisted_tensor", "crossed"];

pub fn left_recipe(kind: &str) -> Result<LiftRecipe> {
    let g = Some(G_FROM_SIGMA);
    Ok(match kind {
        "twisted_crossed" => LiftRecipe { g, ..Default::default() },
        "crossed" => LiftRecipe { g, r: Some(R_CROSSED), ..Default::default() },
        "twisted" => LiftRecipe { g, r: Some(R_TRIVIAL), ..Default::default() },
        "unified" => LiftRecipe { g, r: Some(R_UNIFIED), ..Default::default() },
        "twisted_tensor" => LiftRecipe { g: Some(G_TRIVIAL), ..Default::default() },
        _ => return Err(Error::UnknownConstruction(format!("left lift `{kind}`"))),
    })
}

pub fn right_recipe(kind: &str) -> Result<LiftRecipe> {
    let f = Some(F_FROM_TAU);
    Ok(match kind {
        "twisted_crossed" => LiftRecipe { f, ..Default::default() },
        "unified" => LiftRecipe { f, t: Some(T_UNIFIED), ..Default::default() },
        "f_twist" => LiftRecipe { t: Some(T_TRIVIAL), ..Default::default() },
        "twist" => LiftRecipe { f, t: Some(T_TRIVIAL), ..Default::default() },
        "twisted_tensor" => LiftRecipe { f: Some(F_TRIVIAL), ..Default::default() },
        "crossed" => LiftRecipe { f, t: Some(T_CROSSED), ..Default::default() },
        _ => return Err(Error::UnknownConstruction(format!("right lift `{kind}`"))),
    })
}

/// Two-sided specializations; the general two-sided product reads `G`,
/// `R`, `T` and `tau`.
pub fn two_sided_recipe(kind: &str) -> Result<LiftRecipe> {
    let g = Some(G_FROM_SIGMA);
    Ok(match kind {
        "twisted_crossed" => LiftRecipe { g, ..Default::default() },
        "twisted" => LiftRecipe {
            g,
            r: Some(R_TRIVIAL),
            t: Some(T_TRIVIAL),
            ..Default::default()
        },
        "twisted_tensor" => LiftRecipe {
            g: Some(G_TRIVIAL),
            tau: Some(TAU_TRIVIAL),
            ..Default::default()
        },
        "crossed" => LiftRecipe {
            g,
            r: Some(R_CROSSED),
            t: Some(T_CROSSED),
            ..Default::default()
        },
        _ => return Err(Error::UnknownConstruction(format!("two-sided specialization `{kind}`"))),
    })
}

pub fn lift_left(bundle: &StructureBundle, kind: &str) -> Result<StructureBundle> {
    left_recipe(kind)?.apply(bundle)
}

pub fn lift_right(bundle: &StructureBundle, kind: &str) -> Result<StructureBundle> {
    right_recipe(kind)?.apply(bundle)
}

pub fn two_sided_specialize(bundle: &StructureBundle, kind: &str) -> Result<StructureBundle> {
    two_sided_recipe(kind)?.apply(bundle)
}

/// Product formulas written out directly for each specialization.
pub fn left_direct(kind: &str) -> Result<&'static str> {
    Ok(match kind {
        "twisted_crossed" => "a a'_R sigma(x_{R1}, x'_1) % x_{R2} x'_2",
        "crossed" => "a (x_1 |> a') sigma(x_2, x'_1) % x_3 x'_2",
        "twisted" => "a a' sigma(x_1, x'_1) % x_2 x'_2",
        "unified" => "a (x_1 |> a'_1) sigma((x_2 <| a'_2)_1, x'_1) % (x_2 <| a'_2)_2 x'_2",
        "twisted_tensor" => "a a'_R % x_R x'",
        _ => return Err(Error::UnknownConstruction(format!("left product `{kind}`"))),
    })
}

pub fn right_direct(kind: &str) -> Result<&'static str> {
    Ok(match kind {
        "twisted_crossed" => "x_1 x'_{T1} % tau(x_2, x'_{T2}) b_T b'",
        "unified" => "x_1 (b_1 |> x'_1)_1 % tau(x_2, (b_1 |> x'_1)_2) (b_2 <| x'_2) b'",
        "f_twist" => "x_F % x'^F b b'",
        "twist" => "x_1 x'_1 % tau(x_2, x'_2) b b'",
        "twisted_tensor" => "x x'_T % b_T b'",
        "crossed" => "x_1 x'_1 % tau(x_2, x'_2) (b <| x'_3) b'",
        _ => return Err(Error::UnknownConstruction(format!("right product `{kind}`"))),
    })
}

pub fn two_sided_direct(kind: &str) -> Result<&'static str> {
    Ok(match kind {
        "twisted_crossed" => "a a'_R sigma(x_{R1}, x'_{T1}) % x_{R2} x'_{T2} % tau(x_{R3}, x'_{T3}) b_T b'",
        "twisted" => "a a' sigma(x_1, x'_1) % x_2 x'_2 % tau(x_3, x'_3) b b'",
        "twisted_tensor" => "a a'_R % x_R x'_T % b_T b'",
        "crossed" => "a (x_1 |> a') sigma(x_2, x'_1) % x_3 x'_2 % tau(x_4, x'_3) (b <| x'_4) b'",
        _ => return Err(Error::UnknownConstruction(format!("two-sided product `{kind}`"))),
    })
}
