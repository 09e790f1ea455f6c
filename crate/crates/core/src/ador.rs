//! Edge-sensitive diffusion: diffusivity prescriptions, the conservative and
//! non-conservative augmentation terms, super diffusion, the edge-enhancing
//! source, and velocity-gradient decomposition utilities.
//!
//! The idea: augment a hyperbolic equation `u_t + f(u)_x = 0` with diffusion
//! whose coefficient is a function of the local gradient magnitude, so the
//! added dissipation is negligible in smooth regions and switches on only
//! near steep fronts. Two forms are provided:
//!
//! * conservative: `∇·[d₁(‖∇u‖)∇u] + ∇·[d₂(‖∇u‖)∇(∇²u)]`
//! * non-conservative: `Γ₁(‖∇u‖)∇²u + Γ₂(‖∇u‖)∇⁴u`
//!
//! `Γ₁, d₁ ≥ 0` dissipate; the fourth-order ("super diffusion") coefficient
//! `Γ₂ ≤ 0` selectively damps the highest frequencies. The edge-enhancing
//! source `e¹(∇·u)²` generalizes the classical quadratic artificial
//! viscosity; it is exposed but known to destabilize at practical parameters.
//!
//! Available coefficient shapes (the selector names are historical labels):
//!
//! | prescription | coefficient                                  | gradient input |
//! |--------------|----------------------------------------------|----------------|
//! | C1           | d¹₁ ln(‖∇u‖² + 1) (conservative d₁ and d₂)   | ‖∇u‖           |
//! | C2           | γ₁ \|u_x\|^¼                                 | u_x            |
//! | C3           | γ₁ ln(\|u_x\| + 1)                           | u_x            |
//! | C4           | γ₁ ln(u_x² + 1)                              | u_x            |
//! | C5           | γ₁ ln(‖∇u‖ + 1)                              | ‖∇u‖           |
//! | C6           | directional: γ₁ ln(\|u_x\|+1), γ₁ ln(\|u_y\|+1) | u_x and u_y |
//! | PeronaGauss  | γ₁ exp(−‖∇u‖²/2σ²)                           | ‖∇u‖           |
//! | PeronaLorentz| γ₁ / (1 + ‖∇u‖²/σ²)                          | ‖∇u‖           |
//!
//! In one dimension `‖∇u‖ = |u_x|`. The C1–C6 shapes vanish where their
//! gradient vanishes; the Perona-Malik shapes are maximal (=γ₁) there and
//! *stop* diffusing across strong edges instead.

use crate::dsc::{differentiate, DscKernel};
use crate::error::CoreError;
use crate::grid::{Axis, Field};

/// Diffusivity shape selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prescription {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    PeronaGauss,
    PeronaLorentz,
}

impl Prescription {
    /// True for shapes applied in conservative (flux-divergence) form;
    /// the remaining shapes multiply the Laplacian directly.
    pub fn is_conservative(self) -> bool {
        matches!(self, Prescription::C1 | Prescription::PeronaGauss | Prescription::PeronaLorentz)
    }
}

/// Prescription plus its coefficients. Unused coefficients are ignored; the
/// sign conventions (`d1, gamma1 ≥ 0`, `gamma2 ≤ 0`) are checked by
/// [`AdorConfig::validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdorConfig {
    pub prescription: Prescription,
    /// d¹₁, the conservative diffusivity scale (C1).
    pub d1: f64,
    /// d¹₂, the conservative super-flux scale (C1).
    pub d2: f64,
    /// e¹, the edge-enhancing source scale.
    pub e1: f64,
    /// γ₁, the second-order coefficient scale (C2–C6, Perona kinds).
    pub gamma1: f64,
    /// γ₂ ≤ 0, the fourth-order super-diffusion scale.
    pub gamma2: f64,
    /// σ of the Perona-Malik edge-stopping functions.
    pub sigma_edge: f64,
}

impl AdorConfig {
    /// Augmentation disabled: every coefficient zero.
    pub fn off() -> Self {
        AdorConfig {
            prescription: Prescription::C1,
            d1: 0.0,
            d2: 0.0,
            e1: 0.0,
            gamma1: 0.0,
            gamma2: 0.0,
            sigma_edge: 1.0,
        }
    }

    /// Non-conservative prescription with only Γ₁ active.
    pub fn with_gamma1(prescription: Prescription, gamma1: f64) -> Self {
        AdorConfig {
            prescription,
            gamma1,
            ..AdorConfig::off()
        }
    }

    /// True when any coefficient is non-zero.
    pub fn is_active(&self) -> bool {
        self.d1 != 0.0 || self.d2 != 0.0 || self.e1 != 0.0 || self.gamma1 != 0.0 || self.gamma2 != 0.0
    }

    /// Checks the sign conventions: γ₁ ≥ 0 and d¹₁ ≥ 0 (dissipative), γ₂ ≤ 0
    /// (high-frequency damper), σ > 0 for the Perona-Malik kinds, and all
    /// values finite.
    pub fn validate(&self) -> Result<(), CoreError> {
        for (name, v) in [
            ("d1", self.d1),
            ("d2", self.d2),
            ("e1", self.e1),
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("sigma_edge", self.sigma_edge),
        ] {
            if !v.is_finite() {
                return Err(CoreError::InvalidCoefficient(format!("{name} is not finite")));
            }
        }
        if self.gamma1 < 0.0 {
            return Err(CoreError::InvalidCoefficient(format!(
                "gamma1 must be >= 0, got {}",
                self.gamma1
            )));
        }
        if self.d1 < 0.0 {
            return Err(CoreError::InvalidCoefficient(format!("d1 must be >= 0, got {}", self.d1)));
        }
        if self.gamma2 > 0.0 {
            return Err(CoreError::InvalidCoefficient(format!(
                "gamma2 must be <= 0, got {}",
                self.gamma2
            )));
        }
        if matches!(self.prescription, Prescription::PeronaGauss | Prescription::PeronaLorentz)
            && self.sigma_edge <= 0.0
        {
            return Err(CoreError::InvalidCoefficient(format!(
                "sigma_edge must be > 0, got {}",
                self.sigma_edge
            )));
        }
        Ok(())
    }
}

/// Diffusivity field(s): one scalar field, or a directional pair weighting
/// the x- and y-second-derivatives separately (C6).
#[derive(Debug, Clone, PartialEq)]
pub enum Diffusivity {
    Scalar(Field),
    Directional { x: Field, y: Field },
}

fn zip(a: &Field, b: &Field, f: impl Fn(f64, f64) -> f64) -> Field {
    let values = a.values().iter().zip(b.values()).map(|(x, y)| f(*x, *y)).collect();
    Field::new(*a.grid(), values).expect("pointwise map of finite fields")
}

fn map(a: &Field, f: impl Fn(f64) -> f64) -> Field {
    let values = a.values().iter().map(|x| f(*x)).collect();
    Field::new(*a.grid(), values).expect("pointwise map of finite fields")
}

/// Squared gradient magnitude `u_x² (+ u_y²)`.
fn grad_mag_sq(u_x: &Field, u_y: Option<&Field>) -> Field {
    match u_y {
        Some(uy) => zip(u_x, uy, |a, b| a * a + b * b),
        None => map(u_x, |a| a * a),
    }
}

/// The prescription's coefficient shape with unit scale; the caller supplies
/// the scale (γ₁ for the second-order term, γ₂ for the fourth-order one, d¹₁
/// or d¹₂ for the conservative fluxes).
fn shape(
    prescription: Prescription,
    u_x: &Field,
    u_y: Option<&Field>,
    sigma_edge: f64,
) -> Result<Diffusivity, CoreError> {
    let s = match prescription {
        Prescription::C1 => Diffusivity::Scalar(map(&grad_mag_sq(u_x, u_y), |m2| (m2 + 1.0).ln())),
        Prescription::C2 => Diffusivity::Scalar(map(u_x, |g| g.abs().sqrt().sqrt())),
        Prescription::C3 => Diffusivity::Scalar(map(u_x, |g| (g.abs() + 1.0).ln())),
        Prescription::C4 => Diffusivity::Scalar(map(u_x, |g| (g * g + 1.0).ln())),
        Prescription::C5 => {
            Diffusivity::Scalar(map(&grad_mag_sq(u_x, u_y), |m2| (m2.sqrt() + 1.0).ln()))
        }
        Prescription::C6 => {
            let uy = u_y.ok_or(CoreError::MissingGradient("u_y (directional prescription C6)"))?;
            Diffusivity::Directional {
                x: map(u_x, |g| (g.abs() + 1.0).ln()),
                y: map(uy, |g| (g.abs() + 1.0).ln()),
            }
        }
        Prescription::PeronaGauss => {
            let two_sigma_sq = 2.0 * sigma_edge * sigma_edge;
            Diffusivity::Scalar(map(&grad_mag_sq(u_x, u_y), |m2| (-m2 / two_sigma_sq).exp()))
        }
        Prescription::PeronaLorentz => {
            let sigma_sq = sigma_edge * sigma_edge;
            Diffusivity::Scalar(map(&grad_mag_sq(u_x, u_y), |m2| 1.0 / (1.0 + m2 / sigma_sq)))
        }
    };
    Ok(s)
}

fn scale_diffusivity(d: Diffusivity, scale: f64) -> Diffusivity {
    match d {
        Diffusivity::Scalar(f) => Diffusivity::Scalar(map(&f, |v| scale * v)),
        Diffusivity::Directional { x, y } => Diffusivity::Directional {
            x: map(&x, |v| scale * v),
            y: map(&y, |v| scale * v),
        },
    }
}

/// Pointwise diffusivity of the configured prescription from precomputed
/// gradient fields (`u_y` may be omitted in 1D; directional prescriptions
/// require it). Scaled by γ₁ for C2–C6 and the Perona kinds, by d¹₁ for C1.
pub fn diffusivity(
    u_x: &Field,
    u_y: Option<&Field>,
    config: &AdorConfig,
) -> Result<Diffusivity, CoreError> {
    config.validate()?;
    let scale = match config.prescription {
        Prescription::C1 => config.d1,
        _ => config.gamma1,
    };
    Ok(scale_diffusivity(
        shape(config.prescription, u_x, u_y, config.sigma_edge)?,
        scale,
    ))
}

/// Divergence of the flux `d·∇u` for a given diffusivity field:
/// `∂x(d u_x) + ∂y(d u_y)`. The outer derivative acts on the product field,
/// which preserves the discrete mean on periodic grids.
pub fn conservative_flux_divergence(
    u: &Field,
    d: &Diffusivity,
    kernel: &DscKernel,
) -> Result<Field, CoreError> {
    let u_x = differentiate(u, Axis::X, 1, kernel)?;
    let (dx, dy) = match d {
        Diffusivity::Scalar(f) => (f, f),
        Diffusivity::Directional { x, y } => (x, y),
    };
    let mut out = differentiate(&zip(&u_x, dx, |g, d| d * g), Axis::X, 1, kernel)?;
    if u.grid().dim() == 2 {
        let u_y = differentiate(u, Axis::Y, 1, kernel)?;
        let fy = differentiate(&zip(&u_y, dy, |g, d| d * g), Axis::Y, 1, kernel)?;
        out = zip(&out, &fy, |a, b| a + b);
    }
    Ok(out)
}

/// Conservative augmentation `∇·[d₁(‖∇u‖)∇u] (+ ∇·[d₂(‖∇u‖)∇(∇²u)])`.
///
/// The diffusivity follows the configured prescription (scaled by d¹₁ for C1,
/// γ₁ otherwise); the super-flux term is active only for C1 with `d2 ≠ 0`,
/// where `d₂ = d¹₂ ln(‖∇u‖²+1)` multiplies the gradient of the Laplacian.
pub fn ador_term_conservative(
    u: &Field,
    config: &AdorConfig,
    kernel: &DscKernel,
) -> Result<Field, CoreError> {
    config.validate()?;
    let grid = *u.grid();
    let relevant = match config.prescription {
        Prescription::C1 => config.d1 != 0.0 || config.d2 != 0.0,
        _ => config.gamma1 != 0.0,
    };
    if !relevant {
        return Ok(Field::zeros(grid));
    }
    let u_x = differentiate(u, Axis::X, 1, kernel)?;
    let u_y = if grid.dim() == 2 {
        Some(differentiate(u, Axis::Y, 1, kernel)?)
    } else {
        None
    };
    let base = shape(config.prescription, &u_x, u_y.as_ref(), config.sigma_edge)?;
    let scale = match config.prescription {
        Prescription::C1 => config.d1,
        _ => config.gamma1,
    };
    let mut out = if scale != 0.0 {
        conservative_flux_divergence(u, &scale_diffusivity(base.clone(), scale), kernel)?
    } else {
        Field::zeros(grid)
    };
    if config.prescription == Prescription::C1 && config.d2 != 0.0 {
        let mut lap = differentiate(u, Axis::X, 2, kernel)?;
        if grid.dim() == 2 {
            let lyy = differentiate(u, Axis::Y, 2, kernel)?;
            lap = zip(&lap, &lyy, |a, b| a + b);
        }
        let super_flux =
            conservative_flux_divergence(&lap, &scale_diffusivity(base, config.d2), kernel)?;
        out = zip(&out, &super_flux, |a, b| a + b);
    }
    Ok(out)
}

/// Laplacian `∇²u` via the order-2 stencil on each axis.
pub fn laplacian(u: &Field, kernel: &DscKernel) -> Result<Field, CoreError> {
    let mut lap = differentiate(u, Axis::X, 2, kernel)?;
    if u.grid().dim() == 2 {
        let lyy = differentiate(u, Axis::Y, 2, kernel)?;
        lap = zip(&lap, &lyy, |a, b| a + b);
    }
    Ok(lap)
}

/// Biharmonic `∇⁴u`: the dedicated order-4 stencil per axis plus the mixed
/// `2·∂²x∂²y` term in 2D.
pub fn biharmonic(u: &Field, kernel: &DscKernel) -> Result<Field, CoreError> {
    let mut out = differentiate(u, Axis::X, 4, kernel)?;
    if u.grid().dim() == 2 {
        let d4y = differentiate(u, Axis::Y, 4, kernel)?;
        let d2x = differentiate(u, Axis::X, 2, kernel)?;
        let mixed = differentiate(&d2x, Axis::Y, 2, kernel)?;
        let values = out
            .values()
            .iter()
            .zip(d4y.values())
            .zip(mixed.values())
            .map(|((a, b), c)| a + b + 2.0 * c)
            .collect();
        out = Field::new(*u.grid(), values)?;
    }
    Ok(out)
}

/// Non-conservative augmentation `Γ₁(‖∇u‖)∇²u + Γ₂(‖∇u‖)∇⁴u`.
///
/// Both coefficients share the prescription's shape: `Γ₁ = γ₁·shape`,
/// `Γ₂ = γ₂·shape`. Directional prescriptions weight the axis second
/// derivatives separately. The edge-enhancing source is *not* included here;
/// add [`edge_enhancing`] explicitly when `e¹ ≠ 0`.
pub fn ador_term_nonconservative(
    u: &Field,
    config: &AdorConfig,
    kernel: &DscKernel,
) -> Result<Field, CoreError> {
    config.validate()?;
    let grid = *u.grid();
    if config.gamma1 == 0.0 && config.gamma2 == 0.0 {
        return Ok(Field::zeros(grid));
    }
    let u_x = differentiate(u, Axis::X, 1, kernel)?;
    let u_y = if grid.dim() == 2 {
        Some(differentiate(u, Axis::Y, 1, kernel)?)
    } else {
        None
    };
    let base = shape(config.prescription, &u_x, u_y.as_ref(), config.sigma_edge)?;
    let mut out = Field::zeros(grid);
    if config.gamma1 != 0.0 {
        match &base {
            Diffusivity::Scalar(s) => {
                let lap = laplacian(u, kernel)?;
                let g1 = config.gamma1;
                out = zip(&out, &zip(s, &lap, move |c, l| g1 * c * l), |a, b| a + b);
            }
            Diffusivity::Directional { x, y } => {
                let uxx = differentiate(u, Axis::X, 2, kernel)?;
                let uyy = differentiate(u, Axis::Y, 2, kernel)?;
                let g1 = config.gamma1;
                let term_x = zip(x, &uxx, move |c, l| g1 * c * l);
                let term_y = zip(y, &uyy, move |c, l| g1 * c * l);
                out = zip(&term_x, &term_y, |a, b| a + b);
            }
        }
    }
    if config.gamma2 != 0.0 {
        let d4 = biharmonic(u, kernel)?;
        let g2 = config.gamma2;
        match &base {
            Diffusivity::Scalar(s) => {
                let term = zip(s, &d4, move |c, l| g2 * c * l);
                out = zip(&out, &term, |a, b| a + b);
            }
            Diffusivity::Directional { x, y } => {
                // directional fourth-order weighting mirrors the second-order split
                let d4x = differentiate(u, Axis::X, 4, kernel)?;
                let d4y = differentiate(u, Axis::Y, 4, kernel)?;
                let term_x = zip(x, &d4x, move |c, l| g2 * c * l);
                let term_y = zip(y, &d4y, move |c, l| g2 * c * l);
                let term = zip(&term_x, &term_y, |a, b| a + b);
                out = zip(&out, &term, |a, b| a + b);
            }
        }
    }
    Ok(out)
}

/// Edge-enhancing source `e¹(u_x)²` in 1D, `e¹(u_x + v_y)²` for a 2D velocity
/// pair — the gradient-squared generalization of the classical quadratic
/// artificial viscosity. Known to be destabilizing at practical mesh/step
/// sizes; exposed for experimentation.
pub fn edge_enhancing(
    u: &Field,
    v: Option<&Field>,
    config: &AdorConfig,
    kernel: &DscKernel,
) -> Result<Field, CoreError> {
    config.validate()?;
    let grid = *u.grid();
    if config.e1 == 0.0 {
        return Ok(Field::zeros(grid));
    }
    let e1 = config.e1;
    let u_x = differentiate(u, Axis::X, 1, kernel)?;
    match (grid.dim(), v) {
        (1, _) => Ok(map(&u_x, |g| e1 * g * g)),
        (2, Some(vf)) => {
            let v_y = differentiate(vf, Axis::Y, 1, kernel)?;
            Ok(zip(&u_x, &v_y, |a, b| e1 * (a + b) * (a + b)))
        }
        (2, None) => Err(CoreError::MissingGradient("v (2D edge enhancement needs the velocity pair)")),
        _ => unreachable!("grids are 1D or 2D"),
    }
}

/// Irreducible parts of a 2D velocity gradient: scalar divergence,
/// pseudo-scalar curl, and the symmetric traceless deviator.
///
/// The deviator uses the 3D 1/3-trace convention for a planar field embedded
/// with `w = 0`: `S₁₁ = u_x - (∇·v)/3`, `S₂₂ = v_y - (∇·v)/3`,
/// `S₁₂ = (u_y + v_x)/2`, and the implicit out-of-plane component
/// `S₃₃ = -(∇·v)/3` restores a zero 3D trace.
#[derive(Debug, Clone, PartialEq)]
pub struct GradDecomposition2D {
    pub divergence: Field,
    pub curl_z: Field,
    pub s11: Field,
    pub s12: Field,
    pub s22: Field,
}

impl GradDecomposition2D {
    /// The implicit out-of-plane deviator component `S₃₃ = -(∇·v)/3`.
    pub fn s33(&self) -> Field {
        map(&self.divergence, |d| -d / 3.0)
    }

    /// Rebuilds `(u_x, u_y, v_x, v_y)` from the three parts:
    /// `∇v = (∇·v)/3·I + antisym(curl)/2 + S`.
    pub fn reconstructed_gradient(&self) -> [Field; 4] {
        let u_x = zip(&self.divergence, &self.s11, |d, s| d / 3.0 + s);
        let u_y = zip(&self.s12, &self.curl_z, |s, c| s - c / 2.0);
        let v_x = zip(&self.s12, &self.curl_z, |s, c| s + c / 2.0);
        let v_y = zip(&self.divergence, &self.s22, |d, s| d / 3.0 + s);
        [u_x, u_y, v_x, v_y]
    }

    /// Pointwise Frobenius norm of the (3D-embedded) deviator,
    /// `sqrt(S₁₁² + 2S₁₂² + S₂₂² + S₃₃²)`.
    pub fn deviator_norm(&self) -> Field {
        let mut out = vec![0.0; self.divergence.len()];
        let (s11, s12, s22) = (self.s11.values(), self.s12.values(), self.s22.values());
        let div = self.divergence.values();
        for (i, o) in out.iter_mut().enumerate() {
            let s33 = -div[i] / 3.0;
            *o = (s11[i] * s11[i] + 2.0 * s12[i] * s12[i] + s22[i] * s22[i] + s33 * s33).sqrt();
        }
        Field::new(*self.divergence.grid(), out).expect("finite inputs")
    }
}

/// Splits the gradient of a 2D velocity `(u, v)` into divergence, curl, and
/// symmetric-traceless parts (see [`GradDecomposition2D`]).
pub fn decompose_velocity_gradient(
    u: &Field,
    v: &Field,
    kernel: &DscKernel,
) -> Result<GradDecomposition2D, CoreError> {
    if u.grid().dim() != 2 {
        return Err(CoreError::InvalidInput("velocity gradient decomposition needs 2D fields".into()));
    }
    if u.grid() != v.grid() {
        return Err(CoreError::InvalidInput("u and v must share one grid".into()));
    }
    let u_x = differentiate(u, Axis::X, 1, kernel)?;
    let u_y = differentiate(u, Axis::Y, 1, kernel)?;
    let v_x = differentiate(v, Axis::X, 1, kernel)?;
    let v_y = differentiate(v, Axis::Y, 1, kernel)?;
    let divergence = zip(&u_x, &v_y, |a, b| a + b);
    let curl_z = zip(&v_x, &u_y, |a, b| a - b);
    let s11 = zip(&u_x, &divergence, |g, d| g - d / 3.0);
    let s22 = zip(&v_y, &divergence, |g, d| g - d / 3.0);
    let s12 = zip(&u_y, &v_x, |a, b| 0.5 * (a + b));
    Ok(GradDecomposition2D {
        divergence,
        curl_z,
        s11,
        s12,
        s22,
    })
}

/// A pressure-tensor coefficient: a constant, or a function of the three
/// gradient invariants `(∇·v, |∇×v|, ‖S‖)` evaluated pointwise.
#[derive(Debug, Clone, Copy)]
pub enum Coeff {
    Const(f64),
    Of(fn(div: f64, curl_abs: f64, s_norm: f64) -> f64),
}

impl Coeff {
    fn eval(&self, div: f64, curl_abs: f64, s_norm: f64) -> f64 {
        match self {
            Coeff::Const(c) => *c,
            Coeff::Of(f) => f(div, curl_abs, s_norm),
        }
    }
}

/// Coefficients of the artificial pressure tensor.
#[derive(Debug, Clone, Copy)]
pub struct PressureCoeffs {
    /// Isotropic `ε·nk_BT` contribution.
    pub eps_nkt: Coeff,
    /// Volume-viscosity coefficient ζ⁰_V multiplying `∇·v`.
    pub zeta_v: Coeff,
    /// Rotational coefficient ζ⁰_r multiplying the curl.
    pub zeta_r: Coeff,
    /// Shear coefficient ζ⁰ multiplying the deviator.
    pub zeta: Coeff,
}

/// The four components of a 2×2 tensor field.
#[derive(Debug, Clone, PartialEq)]
pub struct PressureTensor {
    pub p11: Field,
    pub p12: Field,
    pub p21: Field,
    pub p22: Field,
}

/// Assembles the artificial pressure tensor
///
/// ```text
/// P = ε·nk_BT·I − ζ⁰_V (∇·v) I − ζ⁰_r ε⃗·(∇×v) − 2ζ⁰ S
/// ```
///
/// componentwise: `P₁₁ = ε̃ − ζ_V·div − 2ζ·S₁₁`, `P₁₂ = −ζ_r·curl − 2ζ·S₁₂`,
/// `P₂₁ = +ζ_r·curl − 2ζ·S₁₂`, `P₂₂ = ε̃ − ζ_V·div − 2ζ·S₂₂`. A library
/// diagnostic: the solver experiments use the scalar augmentation terms.
pub fn artificial_pressure_tensor(
    decomp: &GradDecomposition2D,
    coeffs: &PressureCoeffs,
) -> PressureTensor {
    let n = decomp.divergence.len();
    let grid = *decomp.divergence.grid();
    let div = decomp.divergence.values();
    let curl = decomp.curl_z.values();
    let s_norm = decomp.deviator_norm();
    let sn = s_norm.values();
    let (s11, s12, s22) = (decomp.s11.values(), decomp.s12.values(), decomp.s22.values());
    let mut p11 = vec![0.0; n];
    let mut p12 = vec![0.0; n];
    let mut p21 = vec![0.0; n];
    let mut p22 = vec![0.0; n];
    for i in 0..n {
        let (d, c, s) = (div[i], curl[i].abs(), sn[i]);
        let eps = coeffs.eps_nkt.eval(d, c, s);
        let zv = coeffs.zeta_v.eval(d, c, s);
        let zr = coeffs.zeta_r.eval(d, c, s);
        let z = coeffs.zeta.eval(d, c, s);
        p11[i] = eps - zv * div[i] - 2.0 * z * s11[i];
        p12[i] = -zr * curl[i] - 2.0 * z * s12[i];
        p21[i] = zr * curl[i] - 2.0 * z * s12[i];
        p22[i] = eps - zv * div[i] - 2.0 * z * s22[i];
    }
    PressureTensor {
        p11: Field::new(grid, p11).expect("finite inputs"),
        p12: Field::new(grid, p12).expect("finite inputs"),
        p21: Field::new(grid, p21).expect("finite inputs"),
        p22: Field::new(grid, p22).expect("finite inputs"),
    }
}
