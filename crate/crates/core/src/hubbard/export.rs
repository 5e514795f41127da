//! Hardware-facing view of a schedule: drive phases per SQUID and a
//! line-oriented text export.

use std::fmt::Write;

use super::block::{AnalogBlock, BlockAngle, BlockKind, BlockTerm};
use super::compile::Schedule;
use crate::error::{Error, Result};
use crate::numfmt::significant;
use crate::phase::PiPhase;
use crate::spin::{phase_lookup, ChainSpec, DriveSettings, TwoLocalTarget};

pub const EXPORT_HEADER: &str = "step,index,kind,angle_over_pi,pairs,dagger,phases";

/// Phases selecting one block term's interaction on its link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkPhases {
    pub link: usize,
    pub phi1: PiPhase,
    pub phi2: PiPhase,
}

fn targets(block: &AnalogBlock) -> Result<Vec<TwoLocalTarget>> {
    if !block.kind.is_analog() {
        return Err(Error::validation("single-qubit rotations are digital steps without drive settings"));
    }
    let negative = block.signed_angle() < 0.0;
    block
        .terms
        .iter()
        .map(|t| match *t {
            BlockTerm::Pair { link, first, second } => Ok(TwoLocalTarget::new(negative, first, second, link)),
            BlockTerm::Single { .. } => {
                Err(Error::Compilation("analog block contains a single-qubit term".into()))
            }
        })
        .collect()
}

/// Drive phases for every link a block activates. The sign of the
/// interaction follows the block's dagger flag and angle sign.
pub fn block_phases(block: &AnalogBlock) -> Result<Vec<LinkPhases>> {
    targets(block)?
        .iter()
        .map(|t| {
            let (phi1, phi2) = phase_lookup(t)?;
            Ok(LinkPhases { link: t.link, phi1, phi2 })
        })
        .collect()
}

/// Full resonant drive settings for a block on `chain`, both tones at `amplitude`.
pub fn drive_settings_for(block: &AnalogBlock, chain: &ChainSpec, amplitude: f64) -> Result<Vec<DriveSettings>> {
    targets(block)?
        .iter()
        .map(|t| {
            chain.link(t.link)?;
            DriveSettings::for_target(chain, t, amplitude)
        })
        .collect()
}

fn angle_over_pi(angle: &BlockAngle) -> String {
    match angle {
        BlockAngle::Pi(p) => p.to_string(),
        BlockAngle::Radians(_) => significant(angle.over_pi(), 12),
    }
}

fn render_terms(block: &AnalogBlock) -> String {
    let letter = |p: crate::pauli::Pauli| p.as_char().to_ascii_lowercase();
    block
        .terms
        .iter()
        .map(|t| match *t {
            BlockTerm::Pair { link, first, second } => {
                format!("{link}:{}-{}:{}", letter(first), link + 1, letter(second))
            }
            BlockTerm::Single { site, axis } => format!("{site}:{}", letter(axis)),
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// One line per block per step, preceded by [`EXPORT_HEADER`].
pub fn export_schedule(s: &Schedule) -> Result<String> {
    let mut lines = Vec::with_capacity(s.steps() * s.step_blocks().len());
    for (index, block) in s.step_blocks().iter().enumerate() {
        let phases = if block.kind == BlockKind::LocalRotation {
            String::new()
        } else {
            block_phases(block)?
                .iter()
                .map(|p| format!("{}:{}:{}", p.link, p.phi1, p.phi2))
                .collect::<Vec<_>>()
                .join(";")
        };
        lines.push((index, block, phases));
    }
    let mut out = String::new();
    writeln!(out, "{EXPORT_HEADER}").expect("writing to a String cannot fail");
    for step in 0..s.steps() {
        for (index, block, phases) in &lines {
            writeln!(
                out,
                "{step},{index},{},{},{},{},{phases}",
                block.kind.label(),
                angle_over_pi(&block.angle),
                render_terms(block),
                u8::from(block.dagger),
            )
            .expect("writing to a String cannot fail");
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hubbard::{compile_schedule, LatticeSpec};
    use crate::pauli::Pauli;

    fn block(terms: Vec<BlockTerm>, dagger: bool) -> AnalogBlock {
        AnalogBlock { kind: BlockKind::TypeB, terms, angle: BlockAngle::Pi(PiPhase::new(1, 4)), dagger }
    }

    #[test]
    fn x_dressing_on_three_links() {
        let terms = [3, 7, 11]
            .iter()
            .map(|&link| BlockTerm::Pair { link, first: Pauli::X, second: Pauli::X })
            .collect();
        let phases = block_phases(&block(terms, false)).unwrap();
        assert!(phases.iter().all(|p| p.phi1 == PiPhase::integer(2) && p.phi2 == PiPhase::integer(1)));
    }

    #[test]
    fn inverse_dressing_flips_the_row() {
        let terms = vec![BlockTerm::Pair { link: 3, first: Pauli::X, second: Pauli::X }];
        let p = block_phases(&block(terms, true)).unwrap();
        assert_eq!((p[0].phi1, p[0].phi2), (PiPhase::integer(1), PiPhase::integer(2)));
    }

    #[test]
    fn mixed_core_on_even_links() {
        let terms = [2, 6, 10]
            .iter()
            .map(|&link| BlockTerm::Pair { link, first: Pauli::X, second: Pauli::Y })
            .collect();
        let core = AnalogBlock { kind: BlockKind::TypeA, terms, angle: BlockAngle::Radians(0.2), dagger: false };
        for p in block_phases(&core).unwrap() {
            assert_eq!((p.phi1, p.phi2), (PiPhase::new(1, 2), PiPhase::new(3, 2)));
        }
    }

    #[test]
    fn export_has_one_line_per_block_and_step() {
        let l = LatticeSpec::hopping_only(2, 2, 1.0).unwrap();
        let s = compile_schedule(&l, 1.0, 2).unwrap();
        let text = export_schedule(&s).unwrap();
        assert_eq!(text.lines().count(), 1 + 2 * s.step_blocks().len());
        assert!(text.lines().nth(1).unwrap().starts_with("0,0,type_b,1/4,"));
    }

    #[test]
    fn local_rotations_have_no_drive() {
        let b = AnalogBlock {
            kind: BlockKind::LocalRotation,
            terms: vec![BlockTerm::Single { site: 1, axis: Pauli::Y }],
            angle: BlockAngle::Pi(PiPhase::new(1, 4)),
            dagger: false,
        };
        assert!(block_phases(&b).is_err());
    }
}
