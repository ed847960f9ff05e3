use crate::dynamics::HamiltonianSet;
use crate::qmat::{pauli::pauli_string, ComplexMatrix};
use crate::C64;

/// Default spin-spin coupling.
pub const DEFAULT_COUPLING_J: f64 = 0.5;

/// Named Hamiltonian sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// H₀ = 2J ZZ; controls XY + ZZ, XZ + ZX, YZ + ZY.
    PureBipartite,
    /// H₀ = ZZ; controls ZX, ZY, YZ, XZ, YY, YX.
    MixedBipartite,
    /// H₀ = ZZ; controls i(|m⟩⟨n| − |n⟩⟨m|) for the six basis pairs m < n.
    MixedGenerators,
    /// H₀ = 2J(ZZI + IZZ); the three two-body forms of [`Preset::PureBipartite`]
    /// on qubit pairs (0, 1) and (1, 2).
    TripartiteNearestNeighbour,
    /// [`Preset::TripartiteNearestNeighbour`] plus i(|m⟩⟨n| − |n⟩⟨m|) for all
    /// 28 pairs of the eight basis states.
    TripartiteFull,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Self::PureBipartite => "pureBipartite",
            Self::MixedBipartite => "mixedBipartite",
            Self::MixedGenerators => "mixedGenerators",
            Self::TripartiteNearestNeighbour => "tripartiteNearestNeighbour",
            Self::TripartiteFull => "tripartiteFull",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            Self::PureBipartite,
            Self::MixedBipartite,
            Self::MixedGenerators,
            Self::TripartiteNearestNeighbour,
            Self::TripartiteFull,
        ]
        .into_iter()
        .find(|p| p.name() == s)
    }

    pub fn nqubits(&self) -> usize {
        match self {
            Self::PureBipartite | Self::MixedBipartite | Self::MixedGenerators => 2,
            Self::TripartiteNearestNeighbour | Self::TripartiteFull => 3,
        }
    }

    /// Whether the drift depends on the coupling J.
    pub fn uses_coupling(&self) -> bool {
        matches!(self, Self::PureBipartite | Self::TripartiteNearestNeighbour | Self::TripartiteFull)
    }
}

fn sum(labels: &[&str]) -> ComplexMatrix {
    let mut out = pauli_string(labels[0]);
    for l in &labels[1..] {
        out = &out + &pauli_string(l);
    }
    out
}

/// i(|m⟩⟨n| − |n⟩⟨m|) for every m < n, in lexicographic order of (m, n).
pub fn transfer_generators(dim: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::new();
    for m in 0..dim {
        for n in (m + 1)..dim {
            let mut g = ComplexMatrix::zeros(dim);
            g[(m, n)] = C64::new(0.0, 1.0);
            g[(n, m)] = C64::new(0.0, -1.0);
            out.push(g);
        }
    }
    out
}

pub fn preset_hamiltonians(preset: Preset, coupling_j: f64) -> HamiltonianSet {
    let two_body = [["XY", "ZZ"], ["XZ", "ZX"], ["YZ", "ZY"]];
    let (h0, controls, j) = match preset {
        Preset::PureBipartite => (
            pauli_string("ZZ").scale_real(2.0 * coupling_j),
            two_body.iter().map(|p| sum(p)).collect(),
            Some(coupling_j),
        ),
        Preset::MixedBipartite => {
            (pauli_string("ZZ"), ["ZX", "ZY", "YZ", "XZ", "YY", "YX"].iter().map(|l| pauli_string(l)).collect(), None)
        }
        Preset::MixedGenerators => (pauli_string("ZZ"), transfer_generators(4), None),
        Preset::TripartiteNearestNeighbour | Preset::TripartiteFull => {
            let h0 = sum(&["ZZI", "IZZ"]).scale_real(2.0 * coupling_j);
            let mut controls: Vec<ComplexMatrix> = Vec::new();
            for pair in two_body {
                controls.push(sum(&[&format!("{}I", pair[0]), &format!("{}I", pair[1])]));
            }
            for pair in two_body {
                controls.push(sum(&[&format!("I{}", pair[0]), &format!("I{}", pair[1])]));
            }
            if preset == Preset::TripartiteFull {
                controls.extend(transfer_generators(8));
            }
            (h0, controls, Some(coupling_j))
        }
    };
    HamiltonianSet::new(h0, controls, j).expect("preset matrices are Hermitian")
}
