use thiserror::Error;

/// Library-wide error type.
///
/// `Domain` marks inputs the library refuses to work on: malformed data,
/// out-of-range parameters, or problem sizes past a certified bound. These are
/// the caller's to fix. `Internal` marks a broken invariant discovered mid
/// computation (a certificate that failed to check, an impossible state).
/// Those indicate a bug and are never the caller's fault.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_distinguishes_domain_from_internal() {
        let d = Error::domain("negative input");
        let i = Error::internal("rank dropped");
        assert!(d.to_string().contains("domain error"), "domain prefix missing: {d}");
        assert!(i.to_string().contains("internal"), "internal prefix missing: {i}");
    }
}
