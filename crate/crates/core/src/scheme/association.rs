use super::{SchemeError, SystemConfig};

/// User-to-cache association, with caches relabelled so the profile is
/// nonincreasing.
///
/// "Cache" below means the relabelled index unless a method says
/// `original`. Users keep their own indices; `groups[λ]` lists the users of
/// relabelled cache `λ` in increasing index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Association {
    profile: Vec<usize>,
    groups: Vec<Vec<usize>>,
    user_cache: Vec<usize>,
    cache_order: Vec<usize>,
}

impl Association {
    /// `assignment[k]` is the original cache of user `k`. Caches are sorted
    /// by load, heaviest first; ties keep their original order.
    pub fn new(num_caches: usize, assignment: &[usize]) -> Result<Self, SchemeError> {
        if let Some((user, &cache)) = assignment.iter().enumerate().find(|(_, &c)| c >= num_caches) {
            return Err(SchemeError::CacheOutOfRange {
                user,
                cache,
                num_caches,
            });
        }
        let mut loads = vec![0usize; num_caches];
        for &c in assignment {
            loads[c] += 1;
        }
        let mut cache_order: Vec<usize> = (0..num_caches).collect();
        cache_order.sort_by_key(|&c| std::cmp::Reverse(loads[c]));
        let mut relabel = vec![0; num_caches];
        for (new, &old) in cache_order.iter().enumerate() {
            relabel[old] = new;
        }
        let user_cache: Vec<usize> = assignment.iter().map(|&c| relabel[c]).collect();
        let mut groups = vec![Vec::new(); num_caches];
        for (k, &c) in user_cache.iter().enumerate() {
            groups[c].push(k);
        }
        Ok(Self {
            profile: groups.iter().map(Vec::len).collect(),
            groups,
            user_cache,
            cache_order,
        })
    }

    /// Users numbered cache by cache: the first `loads[0]` users attach to
    /// original cache 0, the next `loads[1]` to cache 1, and so on.
    pub fn from_loads(loads: &[usize]) -> Self {
        let assignment: Vec<usize> = loads
            .iter()
            .enumerate()
            .flat_map(|(c, &n)| std::iter::repeat(c).take(n))
            .collect();
        Self::new(loads.len(), &assignment).expect("assignment is in range")
    }

    /// `𝓛`, nonincreasing.
    pub fn profile(&self) -> &[usize] {
        &self.profile
    }

    pub fn num_users(&self) -> usize {
        self.user_cache.len()
    }

    pub fn num_caches(&self) -> usize {
        self.profile.len()
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Relabelled cache of user `k`.
    pub fn cache_of(&self, user: usize) -> usize {
        self.user_cache[user]
    }

    pub fn original_cache_of(&self, user: usize) -> usize {
        self.cache_order[self.user_cache[user]]
    }

    /// `cache_order[λ]` is the original label of relabelled cache `λ`.
    pub fn cache_order(&self) -> &[usize] {
        &self.cache_order
    }

    /// 1-based position of `user` within its cache's group.
    pub fn rank(&self, user: usize) -> u32 {
        let group = &self.groups[self.user_cache[user]];
        group.iter().position(|&u| u == user).expect("user is in its group") as u32 + 1
    }
}

/// [`Association::new`] with a user-count check against `config`.
pub fn associate(config: &SystemConfig, assignment: &[usize]) -> Result<Association, SchemeError> {
    if assignment.len() != config.num_users {
        return Err(SchemeError::UserCount {
            expected: config.num_users,
            got: assignment.len(),
        });
    }
    Association::new(config.num_caches, assignment)
}
