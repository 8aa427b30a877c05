//! Persistent environments shared by the evaluator and the denotational semantics.

use std::sync::Arc;

/// An immutable map from names to values. Extension is O(1) and shadows any
/// earlier binding of the same name; clones share structure.
pub struct Env<V> {
    head: Option<Arc<Node<V>>>,
}

struct Node<V> {
    name: String,
    value: V,
    next: Option<Arc<Node<V>>>,
}

impl<V> Env<V> {
    pub fn new() -> Self {
        Env { head: None }
    }

    pub fn extend(&self, name: impl Into<String>, value: V) -> Self {
        Env {
            head: Some(Arc::new(Node {
                name: name.into(),
                value,
                next: self.head.clone(),
            })),
        }
    }

    pub fn lookup(&self, name: &str) -> Option<&V> {
        let mut cur = self.head.as_deref();
        while let Some(node) = cur {
            if node.name == name {
                return Some(&node.value);
            }
            cur = node.next.as_deref();
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_none()
    }

    /// Visible bindings, innermost first, with shadowed entries skipped.
    pub fn bindings(&self) -> Vec<(&str, &V)> {
        let mut out: Vec<(&str, &V)> = Vec::new();
        let mut cur = self.head.as_deref();
        while let Some(node) = cur {
            if !out.iter().any(|(n, _)| *n == node.name) {
                out.push((&node.name, &node.value));
            }
            cur = node.next.as_deref();
        }
        out
    }

    /// Address of the head cell; equal identities imply equal contents.
    pub(crate) fn identity(&self) -> usize {
        self.head
            .as_ref()
            .map_or(0, |n| Arc::as_ptr(n) as *const u8 as usize)
    }
}

impl<V> Clone for Env<V> {
    fn clone(&self) -> Self {
        Env {
            head: self.head.clone(),
        }
    }
}

impl<V> Default for Env<V> {
    fn default() -> Self {
        Env::new()
    }
}

impl<V: std::fmt::Debug> std::fmt::Debug for Env<V> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.bindings()).finish()
    }
}

impl<V, S: Into<String>> FromIterator<(S, V)> for Env<V> {
    fn from_iter<I: IntoIterator<Item = (S, V)>>(iter: I) -> Self {
        iter.into_iter()
            .fold(Env::new(), |env, (name, value)| env.extend(name, value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extension_shadows() {
        let env = Env::new().extend("x", 1).extend("y", 2).extend("x", 3);
        assert_eq!(env.lookup("x"), Some(&3));
        assert_eq!(env.lookup("y"), Some(&2));
        assert_eq!(env.lookup("z"), None);
        assert_eq!(env.bindings(), vec![("x", &3), ("y", &2)]);
    }

    #[test]
    fn clones_share_identity() {
        let env = Env::new().extend("x", 1);
        assert_eq!(env.identity(), env.clone().identity());
        assert_ne!(env.identity(), env.extend("y", 2).identity());
        assert_eq!(Env::<i32>::new().identity(), 0);
    }
}
