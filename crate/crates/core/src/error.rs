//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by landscape construction, cloud building and analysis.
#[derive(Debug, Error)]
pub enum Error {
    /// Locus count outside the supported 1..=32 range.
    #[error("locus count n={n} out of range (1 <= n <= 32)")]
    LocusCount { n: usize },

    /// Epistasis degree incompatible with the locus count.
    #[error("epistasis degree k={k} out of range for n={n} (0 <= k <= n-1)")]
    Epistasis { k: usize, n: usize },

    /// Genotype length differs from the landscape's locus count.
    #[error("genotype has {got} loci, landscape expects {expected}")]
    GenotypeLength { expected: usize, got: usize },

    /// A fitness value fell outside [0, 1].
    #[error("fitness value {value} outside [0, 1]")]
    FitnessOutOfRange { value: f64 },

    /// Bin width must be strictly positive and at most 1.
    #[error("bin width {width} invalid (0 < width <= 1)")]
    BinWidth { width: f64 },

    /// A sample request asked for zero genotypes.
    #[error("sample count must be >= 1")]
    EmptySample,

    /// A hill-climbing run plan had a zero field.
    #[error("ghc config: {field} must be >= 1")]
    GhcConfig { field: &'static str },

    /// A cloud was built from an empty genotype stream.
    #[error("genotype stream is empty")]
    EmptyStream,

    /// An operation needed a non-empty cloud.
    #[error("fitness cloud holds no points")]
    EmptyCloud,

    /// Threshold scanning needs at least two shape rows.
    #[error("cloud shape has {rows} row(s), need at least 2")]
    TooFewRows { rows: usize },

    /// Two clouds with different bin widths or bordering rules cannot merge.
    #[error("cannot merge clouds: {reason}")]
    CloudMismatch { reason: &'static str },

    /// All regression abscissas coincide; the line is undetermined.
    #[error("degenerate regression: all points share one abscissa")]
    DegenerateFit,

    /// A regime or barrier query needed a threshold that was not found.
    #[error("threshold {name} is absent (curve never crosses the diagonal)")]
    MissingThreshold { name: &'static str },

    /// A text artifact (CSV or descriptor) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
