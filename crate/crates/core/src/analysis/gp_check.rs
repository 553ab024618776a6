use crate::enumerate::enumerate_gk;
use crate::functions::LengthFunction;
use crate::progression::GeomProgression;
use crate::window::SequenceWindow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// No member of `G_k` with largest term `<= N` lies inside the window.
    Family,
    /// No progression of length `>= k(N)` lies inside the window.
    Definitional,
}

/// Returns a forbidden progression contained in `window`, if there is one.
///
/// Works from the full family `G_k`, never from the minimal subfamily, so it
/// stays independent of the process it referees.
pub fn verify_gp_free(
    window: &SequenceWindow,
    k: &LengthFunction,
    mode: VerifyMode,
) -> Option<GeomProgression> {
    let max = window.max();
    let family = match mode {
        VerifyMode::Family => enumerate_gk(max, k),
        VerifyMode::Definitional => enumerate_gk(max, &LengthFunction::Constant(k.eval(max))),
    };
    family.into_iter().find(|p| p.terms().expect("terms bounded by N").iter().all(|&t| window.contains(t)))
}
