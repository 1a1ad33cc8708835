//! The fourteen semantic dimensions and the packed activation vector.

use std::fmt;
use std::str::FromStr;

/// Number of basis dimensions. Every activation vector and matrix row has
/// exactly this many bit positions.
pub const DIMENSION_COUNT: usize = 14;

/// One basis dimension, identified by its single-letter symbol.
///
/// Variant order is the canonical column order used by the activation TSV:
/// `A T P C B D S Y R F I V L M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    A,
    T,
    P,
    C,
    B,
    D,
    S,
    Y,
    R,
    F,
    I,
    V,
    L,
    M,
}

impl Dimension {
    /// All dimensions in canonical column order.
    pub const ALL: [Dimension; DIMENSION_COUNT] = [
        Dimension::A,
        Dimension::T,
        Dimension::P,
        Dimension::C,
        Dimension::B,
        Dimension::D,
        Dimension::S,
        Dimension::Y,
        Dimension::R,
        Dimension::F,
        Dimension::I,
        Dimension::V,
        Dimension::L,
        Dimension::M,
    ];

    /// Column position in canonical order.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Dimension> {
        Self::ALL.get(index).copied()
    }

    pub fn symbol(self) -> char {
        match self {
            Dimension::A => 'A',
            Dimension::T => 'T',
            Dimension::P => 'P',
            Dimension::C => 'C',
            Dimension::B => 'B',
            Dimension::D => 'D',
            Dimension::S => 'S',
            Dimension::Y => 'Y',
            Dimension::R => 'R',
            Dimension::F => 'F',
            Dimension::I => 'I',
            Dimension::V => 'V',
            Dimension::L => 'L',
            Dimension::M => 'M',
        }
    }

    pub fn concept(self) -> &'static str {
        match self {
            Dimension::A => "AccountState",
            Dimension::T => "TransactionLog",
            Dimension::P => "PaymentInstruction",
            Dimension::C => "ConsentRecord",
            Dimension::B => "BeneficiaryRecord",
            Dimension::D => "DirectDebitMandate",
            Dimension::S => "StandingOrder",
            Dimension::Y => "PartyIdentity",
            Dimension::R => "ProductDefinition",
            Dimension::F => "FundsAvailability",
            Dimension::I => "ServiceDiscovery",
            Dimension::V => "SecuritiesPosition",
            Dimension::L => "CreditFacility",
            Dimension::M => "MarketPrice",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Dimension::A => "Identity, status, currency, type",
            Dimension::T => "Immutable ordered event ledger",
            Dimension::P => "Intent/instruction to move value",
            Dimension::C => "Scopes, permissions, duration, PSU grant",
            Dimension::B => "Trusted third-party endpoint metadata",
            Dimension::D => "Pull instruction lifecycle (creditor-initiated)",
            Dimension::S => "Recurring push instruction",
            Dimension::Y => "Customer demographic, legal person",
            Dimension::R => "Bank offer, rates, fees, features",
            Dimension::F => "Point-in-time sufficiency predicate",
            Dimension::I => "API endpoint availability and capabilities",
            Dimension::V => "Quantity, cost basis, market value of holdings",
            Dimension::L => "Limits, covenants, drawn/undrawn amounts",
            Dimension::M => "External time-series price observable",
        }
    }

    /// Parses a comma-separated symbol list such as `Y,A,C,B`.
    pub fn parse_list(list: &str) -> Result<Vec<Dimension>, UnknownDimension> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown dimension symbol `{0}`")]
pub struct UnknownDimension(pub String);

impl FromStr for Dimension {
    type Err = UnknownDimension;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Dimension::ALL
                .iter()
                .copied()
                .find(|d| d.symbol() == c)
                .ok_or_else(|| UnknownDimension(s.to_string())),
            _ => Err(UnknownDimension(s.to_string())),
        }
    }
}

/// A GF(2)^14 vector packed into one word; bit `i` is dimension
/// `Dimension::ALL[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ActivationVector(u16);

impl ActivationVector {
    pub const ZERO: ActivationVector = ActivationVector(0);
    const MASK: u16 = (1 << DIMENSION_COUNT) - 1;

    /// Builds a vector from raw bits. Bits above position 13 are discarded.
    pub fn from_bits(bits: u16) -> Self {
        ActivationVector(bits & Self::MASK)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// The standard basis vector for one dimension.
    pub fn unit(dim: Dimension) -> Self {
        ActivationVector(1 << dim.index())
    }

    pub fn from_dims<I: IntoIterator<Item = Dimension>>(dims: I) -> Self {
        dims.into_iter().fold(Self::ZERO, |v, d| v.with(d))
    }

    pub fn get(self, dim: Dimension) -> bool {
        self.0 & (1 << dim.index()) != 0
    }

    pub fn set(&mut self, dim: Dimension) {
        self.0 |= 1 << dim.index();
    }

    #[must_use]
    pub fn with(mut self, dim: Dimension) -> Self {
        self.set(dim);
        self
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Hamming weight.
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// `Some(dim)` when this is the standard basis vector of `dim`.
    pub fn as_unit(self) -> Option<Dimension> {
        if self.weight() == 1 {
            Dimension::from_index(self.0.trailing_zeros() as usize)
        } else {
            None
        }
    }

    /// Set dimensions in canonical order.
    pub fn dims(self) -> impl Iterator<Item = Dimension> {
        Dimension::ALL.into_iter().filter(move |d| self.get(*d))
    }

    /// Parity of the bits selected by `mask`, i.e. the GF(2) dot product.
    pub fn dot(self, mask: ActivationVector) -> bool {
        (self.0 & mask.0).count_ones() % 2 == 1
    }

    pub fn is_superset_of(self, other: ActivationVector) -> bool {
        self.0 & other.0 == other.0
    }
}

impl std::ops::BitXor for ActivationVector {
    type Output = ActivationVector;

    fn bitxor(self, rhs: Self) -> Self {
        ActivationVector(self.0 ^ rhs.0)
    }
}

impl std::ops::BitXorAssign for ActivationVector {
    fn bitxor_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl std::ops::BitAnd for ActivationVector {
    type Output = ActivationVector;

    fn bitand(self, rhs: Self) -> Self {
        ActivationVector(self.0 & rhs.0)
    }
}

impl std::ops::Not for ActivationVector {
    type Output = ActivationVector;

    fn not(self) -> Self {
        ActivationVector(!self.0 & Self::MASK)
    }
}

impl std::ops::BitOr for ActivationVector {
    type Output = ActivationVector;

    fn bitor(self, rhs: Self) -> Self {
        ActivationVector(self.0 | rhs.0)
    }
}

impl std::ops::BitOrAssign for ActivationVector {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl fmt::Display for ActivationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, d) in self.dims().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}
