//! ABO blood types and patient/donor pair labels.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AboType {
    O,
    A,
    B,
    AB,
}

impl AboType {
    /// Fixed iteration order used for groups and configs.
    pub const ALL: [AboType; 4] = [AboType::O, AboType::A, AboType::B, AboType::AB];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AboType::O => "O",
            AboType::A => "A",
            AboType::B => "B",
            AboType::AB => "AB",
        }
    }
}

impl fmt::Display for AboType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AboType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "O" => Ok(AboType::O),
            "A" => Ok(AboType::A),
            "B" => Ok(AboType::B),
            "AB" => Ok(AboType::AB),
            _ => Err(format!("unknown blood type `{s}`")),
        }
    }
}

/// Whether a donor of type `donor` can give to a patient of type `patient`.
/// O donors are universal, AB patients are universal recipients.
pub fn blood_type_compatible(patient: AboType, donor: AboType) -> bool {
    donor == AboType::O || patient == AboType::AB || patient == donor
}

/// Blood-type label of a node: its patient's and its donor's type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AboPair {
    pub patient: AboType,
    pub donor: AboType,
}

impl AboPair {
    pub fn new(patient: AboType, donor: AboType) -> Self {
        Self { patient, donor }
    }

    /// Index in `0..16`, patient-major.
    pub fn index(self) -> usize {
        self.patient.index() * 4 + self.donor.index()
    }

    /// Whether the two pairs can swap donors as far as blood types go.
    pub fn cross_compatible(self, other: AboPair) -> bool {
        blood_type_compatible(self.patient, other.donor)
            && blood_type_compatible(other.patient, self.donor)
    }
}

impl fmt::Display for AboPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.patient, self.donor)
    }
}

impl FromStr for AboPair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (p, d) = s
            .split_once('/')
            .ok_or_else(|| format!("expected <patient>/<donor>, got `{s}`"))?;
        Ok(AboPair::new(p.parse()?, d.parse()?))
    }
}
