use std::fmt;
use std::sync::Arc;

#[derive(Debug)]
struct Inner {
    names: Vec<String>,
    /// Variables the Adams maps leave untouched (the central symbol `m`
    /// of the substitution operators). Ordinary variables get their
    /// exponents multiplied by k.
    adams_exempt: Vec<bool>,
}

/// An ordered set of variable names. The order is fixed for the lifetime
/// of a computation; canonical monomial ordering depends on it.
#[derive(Clone, Debug)]
pub struct VarSet(Arc<Inner>);

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Self::with_exempt(names, &[])
    }

    /// Like `new`, but the names listed in `exempt` are fixed by Adams maps.
    pub fn with_exempt<S: AsRef<str>>(names: &[S], exempt: &[&str]) -> Self {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                assert_ne!(a, b, "duplicate variable name {a:?}");
            }
        }
        let adams_exempt = names.iter().map(|n| exempt.contains(&n.as_str())).collect();
        VarSet(Arc::new(Inner { names, adams_exempt }))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn is_adams_exempt(&self, i: usize) -> bool {
        self.0.adams_exempt[i]
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.names == other.0.names && self.0.adams_exempt == other.0.adams_exempt)
    }
}

impl Eq for VarSet {}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.names.join(" "))
    }
}
