//! Published reference values the experiments are compared against.

use super::run::TerminalClass;

/// A two-qubit start written as Bell-basis coefficients with a (1+ε) factor
/// on one term, and the Bell state it is reported to end in.
#[derive(Debug, Clone, Copy)]
pub struct BellCase {
    /// Nearby computational basis state, e.g. "00".
    pub near: &'static str,
    /// Coefficients at ε = 0.
    pub base: [f64; 4],
    /// Index of the coefficient multiplied by (1+ε).
    pub boosted: usize,
    pub expected: TerminalClass,
}

impl BellCase {
    pub fn coefficients(&self, epsilon: f64) -> [f64; 4] {
        let mut c = self.base;
        c[self.boosted] *= 1.0 + epsilon;
        c
    }
}

pub const BELL_CASES: [BellCase; 8] = [
    BellCase { near: "00", base: [1.0, 1.0, 0.0, 0.0], boosted: 0, expected: TerminalClass::Bell(0) },
    BellCase { near: "00", base: [1.0, 1.0, 0.0, 0.0], boosted: 1, expected: TerminalClass::Bell(1) },
    BellCase { near: "11", base: [1.0, -1.0, 0.0, 0.0], boosted: 0, expected: TerminalClass::Bell(0) },
    BellCase { near: "11", base: [1.0, -1.0, 0.0, 0.0], boosted: 1, expected: TerminalClass::Bell(1) },
    BellCase { near: "01", base: [0.0, 0.0, 1.0, 1.0], boosted: 2, expected: TerminalClass::Bell(2) },
    BellCase { near: "01", base: [0.0, 0.0, 1.0, 1.0], boosted: 3, expected: TerminalClass::Bell(3) },
    BellCase { near: "10", base: [0.0, 0.0, 1.0, -1.0], boosted: 2, expected: TerminalClass::Bell(3) },
    BellCase { near: "10", base: [0.0, 0.0, 1.0, -1.0], boosted: 3, expected: TerminalClass::Bell(3) },
];

/// Spectrum whose three differently started runs all settle at
/// [`REFERENCE_STEADY`].
pub const REFERENCE_SPECTRUM: [f64; 4] = [0.4932, 0.3485, 0.1301, 0.0282];
pub const REFERENCE_STEADY: f64 = 0.1648;

/// Reported steady state of one MEMS run.
#[derive(Debug, Clone, Copy)]
pub struct MemsCase {
    pub spectrum: [f64; 4],
    pub weights: [f64; 4],
    pub preconcurrences: [f64; 4],
    pub e_star: f64,
    pub e_steady: f64,
}

const fn case(
    spectrum: [f64; 4],
    weights: [f64; 4],
    preconcurrences: [f64; 4],
    e_star: f64,
    e_steady: f64,
) -> MemsCase {
    MemsCase { spectrum, weights, preconcurrences, e_star, e_steady }
}

/// Runs whose steady state follows the kernel-class pattern.
pub const KERNEL_CASES: [MemsCase; 10] = [
    case(
        [0.4497, 0.2978, 0.2498, 0.0026],
        [0.4497, 0.2502, 0.1458, 0.1544],
        [0.9999, 0.9998, 0.1868, 0.1868],
        0.1442,
        0.1434,
    ),
    case(
        [0.5326, 0.2953, 0.1624, 0.0096],
        [0.5323, 0.1625, 0.1516, 0.1536],
        [1.0000, 0.9999, 0.3538, 0.3538],
        0.2637,
        0.2618,
    ),
    case(
        [0.5939, 0.2516, 0.1266, 0.0278],
        [0.5935, 0.1289, 0.1431, 0.1344],
        [0.9999, 0.9906, 0.6025, 0.6033],
        0.3000,
        0.2985,
    ),
    case(
        [0.5467, 0.3363, 0.1099, 0.0070],
        [0.5466, 0.1112, 0.1743, 0.1679],
        [0.9999, 0.9921, 0.2852, 0.2846],
        0.3398,
        0.3387,
    ),
    case(
        [0.5155, 0.3716, 0.1118, 0.0010],
        [0.5155, 0.1124, 0.1907, 0.1815],
        [1.0000, 0.9967, 0.1082, 0.1082],
        0.3651,
        0.3632,
    ),
    case(
        [0.6607, 0.1901, 0.1083, 0.0409],
        [0.6605, 0.1050, 0.1177, 0.1168],
        [1.0000, 0.9654, 0.7678, 0.7891],
        0.3761,
        0.3766,
    ),
    case(
        [0.5884, 0.2693, 0.1398, 0.0024],
        [0.5884, 0.1287, 0.1419, 0.1409],
        [1.0000, 0.9963, 0.1888, 0.1888],
        0.3978,
        0.4068,
    ),
    case(
        [0.6465, 0.2604, 0.0659, 0.0271],
        [0.6465, 0.0663, 0.1397, 0.1476],
        [1.0000, 0.9916, 0.5851, 0.5880],
        0.4126,
        0.4122,
    ),
    case(
        [0.6122, 0.3039, 0.0714, 0.0125],
        [0.6120, 0.0718, 0.1566, 0.1596],
        [1.0000, 0.9957, 0.3967, 0.3961],
        0.4175,
        0.4152,
    ),
    case(
        [0.7760, 0.1800, 0.0294, 0.0146],
        [0.7756, 0.0297, 0.0870, 0.1077],
        [0.9999, 0.9822, 0.5370, 0.5368],
        0.6441,
        0.6418,
    ),
];

/// Runs whose steady state reaches the maximum without the kernel pattern.
pub const NON_KERNEL_CASES: [MemsCase; 7] = [
    case(
        [0.6523, 0.2515, 0.0768, 0.0194],
        [0.6516, 0.1108, 0.1223, 0.1153],
        [0.9996, 0.5565, 0.6762, 0.6542],
        0.4358,
        0.4316,
    ),
    case(
        [0.6099, 0.3298, 0.0522, 0.0082],
        [0.6097, 0.1385, 0.1402, 0.1116],
        [1.0000, 0.3920, 0.3722, 0.4560],
        0.4537,
        0.4523,
    ),
    case(
        [0.6385, 0.3130, 0.0433, 0.0052],
        [0.6378, 0.1089, 0.1424, 0.1109],
        [0.9990, 0.4420, 0.2963, 0.3284],
        0.5145,
        0.5104,
    ),
    case(
        [0.7336, 0.2303, 0.0321, 0.0040],
        [0.7330, 0.0867, 0.1138, 0.0665],
        [0.9986, 0.4379, 0.2661, 0.4015],
        0.6412,
        0.6370,
    ),
    case(
        [0.8069, 0.1686, 0.0229, 0.0016],
        [0.8064, 0.0478, 0.0678, 0.0780],
        [0.9978, 0.5117, 0.1987, 0.2433],
        0.7516,
        0.7477,
    ),
    case(
        [0.8428, 0.1348, 0.0210, 0.0011],
        [0.8422, 0.0391, 0.0463, 0.0724],
        [1.0000, 0.6232, 0.2511, 0.2195],
        0.7974,
        0.7903,
    ),
    case(
        [0.8437, 0.1507, 0.0050, 0.0006],
        [0.8433, 0.0752, 0.0764, 0.0052],
        [0.9999, 0.2302, 0.1841, 0.4753],
        0.8197,
        0.8094,
    ),
];
