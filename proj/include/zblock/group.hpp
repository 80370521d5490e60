#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"

namespace zblock {

inline constexpr int kDefaultElementCap = 20000;

/// Parsed description of a permutation group: either explicit generators on
/// a stated degree, or a builtin constructor tag.
struct GroupSpec {
    std::string name;
    int degree = 0;
    std::vector<Permutation> generators;
    std::string builtin; // original tag when constructed from one
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace detail

GroupSpec builtin_spec(const std::string& tag);

namespace detail {

inline GroupSpec cyclic_spec(int n) {
    if (n < 1) throw ParseError("cyclic order must be >= 1");
    GroupSpec spec;
    spec.name = "C" + std::to_string(n);
    spec.degree = n;
    std::vector<int> im(n);
    for (int i = 0; i < n; ++i) im[i] = (i + 1) % n;
    if (n > 1) spec.generators.push_back(Permutation(std::move(im)));
    return spec;
}

inline GroupSpec dihedral_spec(int order) {
    if (order < 6 || order % 2 != 0)
        throw ParseError("dihedral order must be an even integer >= 6");
    int n = order / 2;
    GroupSpec spec;
    spec.name = "D" + std::to_string(order);
    spec.degree = n;
    std::vector<int> rot(n), refl(n);
    for (int i = 0; i < n; ++i) {
        rot[i] = (i + 1) % n;
        refl[i] = (n - i) % n;
    }
    spec.generators.push_back(Permutation(std::move(rot)));
    spec.generators.push_back(Permutation(std::move(refl)));
    return spec;
}

inline GroupSpec symmetric_spec(int n) {
    if (n < 1) throw ParseError("symmetric degree must be >= 1");
    GroupSpec spec;
    spec.name = "S" + std::to_string(n);
    spec.degree = std::max(n, 1);
    if (n >= 2) spec.generators.push_back(Permutation::from_cycles("(1 2)", spec.degree));
    if (n >= 3) {
        std::string cyc = "(";
        for (int i = 1; i <= n; ++i) cyc += (i > 1 ? " " : "") + std::to_string(i);
        cyc += ")";
        spec.generators.push_back(Permutation::from_cycles(cyc, spec.degree));
    }
    return spec;
}

inline GroupSpec alternating_spec(int n) {
    if (n < 3) throw ParseError("alternating degree must be >= 3");
    GroupSpec spec;
    spec.name = "A" + std::to_string(n);
    spec.degree = n;
    spec.generators.push_back(Permutation::from_cycles("(1 2 3)", n));
    if (n > 3) {
        std::string cyc = "(";
        int start = (n % 2 == 1) ? 1 : 2;
        for (int i = start; i <= n; ++i) cyc += (i > start ? " " : "") + std::to_string(i);
        cyc += ")";
        spec.generators.push_back(Permutation::from_cycles(cyc, n));
    }
    return spec;
}

inline GroupSpec direct_product_spec(const std::string& args) {
    auto parts = split(args, ';');
    if (parts.size() < 2) throw ParseError("direct_product needs at least two ';'-separated factors");
    std::vector<GroupSpec> factors;
    for (auto& part : parts) factors.push_back(builtin_spec(trim(part)));
    GroupSpec spec;
    spec.degree = 0;
    std::string name;
    for (auto& f : factors) {
        name += (name.empty() ? "" : "x") + f.name;
        spec.degree += f.degree;
    }
    spec.name = name;
    int offset = 0;
    for (auto& f : factors) {
        for (auto& g : f.generators) {
            std::vector<int> im(spec.degree);
            std::iota(im.begin(), im.end(), 0);
            for (int i = 0; i < f.degree; ++i) im[offset + i] = offset + g(i);
            spec.generators.push_back(Permutation(std::move(im)));
        }
        offset += f.degree;
    }
    return spec;
}

} // namespace detail

/// Resolves a builtin tag ("cyclic 6", "dihedral 8", "symmetric 4",
/// "alternating 5", "direct_product cyclic 4; cyclic 2") to a concrete spec.
inline GroupSpec builtin_spec(const std::string& tag) {
    std::string t = detail::trim(tag);
    size_t sp = t.find_first_of(" \t");
    std::string head = (sp == std::string::npos) ? t : t.substr(0, sp);
    std::string args = (sp == std::string::npos) ? "" : detail::trim(t.substr(sp + 1));
    auto int_arg = [&]() -> int {
        try {
            size_t used = 0;
            int v = std::stoi(args, &used);
            if (used != args.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw ParseError("builtin '" + head + "' expects one integer argument, got '" + args + "'");
        }
    };
    GroupSpec spec;
    if (head == "cyclic") spec = detail::cyclic_spec(int_arg());
    else if (head == "dihedral") spec = detail::dihedral_spec(int_arg());
    else if (head == "symmetric") spec = detail::symmetric_spec(int_arg());
    else if (head == "alternating") spec = detail::alternating_spec(int_arg());
    else if (head == "direct_product") spec = detail::direct_product_spec(args);
    else throw ParseError("unknown builtin tag '" + head + "'");
    spec.builtin = t;
    return spec;
}

/// Parses the group-file format: one directive per line, '#' starts a
/// comment. Either `builtin: <tag>` or `degree: <n>` plus `gen: <cycles>`
/// lines.
inline GroupSpec parse_group_file(const std::string& text) {
    std::string name;
    int degree = -1;
    std::vector<std::string> gen_lines;
    std::string builtin;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = detail::trim(raw);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'key: value', got '" + line + "'");
        std::string key = detail::trim(line.substr(0, colon));
        std::string value = detail::trim(line.substr(colon + 1));
        if (key == "name") name = value;
        else if (key == "degree") {
            try {
                degree = std::stoi(value);
            } catch (...) {
                throw ParseError("bad degree '" + value + "'");
            }
            if (degree < 1) throw ParseError("degree must be >= 1");
        } else if (key == "gen") gen_lines.push_back(value);
        else if (key == "builtin") builtin = value;
        else throw ParseError("unknown directive '" + key + "'");
    }
    if (!builtin.empty()) {
        if (degree >= 0 || !gen_lines.empty())
            throw ParseError("'builtin' cannot be combined with 'degree'/'gen'");
        GroupSpec spec = builtin_spec(builtin);
        if (!name.empty()) spec.name = name;
        return spec;
    }
    if (degree < 0) throw ParseError("missing 'degree' (or 'builtin') directive");
    if (gen_lines.empty()) throw ParseError("no generators given and no builtin tag");
    GroupSpec spec;
    spec.name = name.empty() ? "G" : name;
    spec.degree = degree;
    for (auto& g : gen_lines) spec.generators.push_back(Permutation::from_cycles(g, degree));
    return spec;
}

/// A fully enumerated finite permutation group with conjugacy-class data.
///
/// Elements are discovered by breadth-first closure from the sorted
/// generator list, so element indices are reproducible across runs; the
/// identity is element 0. Conjugacy classes are numbered by their minimal
/// element index, which is also the class representative.
class Group {
public:
    Group() = default; // empty placeholder; assign before use

    static Group generate(const GroupSpec& spec, int element_cap = kDefaultElementCap) {
        std::vector<Permutation> gens = spec.generators;
        for (auto& g : gens)
            if (g.degree() != spec.degree)
                throw ParseError("generator degree " + std::to_string(g.degree()) +
                                 " does not match declared degree " + std::to_string(spec.degree));
        return Group(spec.degree, std::move(gens), element_cap);
    }

    /// Rebuilds a group from a complete, closed set of member permutations
    /// (used to turn subgroups and quotients into standalone groups).
    /// Elements are enumerated in lexicographic order, which puts the
    /// identity first; a small generating set is extracted for the orbit
    /// computations.
    static Group from_members(int degree, std::vector<Permutation> members) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        Group g;
        g.degree_ = degree;
        g.elements_ = std::move(members);
        check_internal(!g.elements_.empty() && g.elements_[0].is_identity(),
                       "member list does not contain the identity first");
        int n = g.order();
        for (int i = 0; i < n; ++i) g.index_[g.elements_[i]] = i;
        // greedy small generating set: repeatedly adjoin the smallest
        // element outside the closure so far
        {
            std::vector<char> closed(n, 0);
            closed[0] = 1;
            int num_closed = 1;
            while (num_closed < n) {
                int next = -1;
                for (int i = 1; i < n; ++i)
                    if (!closed[i]) {
                        next = i;
                        break;
                    }
                check_internal(next >= 0, "closure bookkeeping failed");
                g.generators_.push_back(g.elements_[next]);
                std::vector<int> frontier{0};
                std::vector<char> seen(n, 0);
                seen[0] = 1;
                for (size_t head = 0; head < frontier.size(); ++head)
                    for (const auto& gen : g.generators_) {
                        auto it = g.index_.find(g.elements_[frontier[head]].then(gen));
                        check_internal(it != g.index_.end(), "member list not closed under multiplication");
                        if (!seen[it->second]) {
                            seen[it->second] = 1;
                            frontier.push_back(it->second);
                        }
                    }
                num_closed = 0;
                closed = seen;
                for (char c : closed) num_closed += c;
            }
        }
        g.finish_tables();
        return g;
    }

    int degree() const { return degree_; }
    int order() const { return static_cast<int>(elements_.size()); }
    const Permutation& perm(int i) const { return elements_[i]; }
    const std::vector<Permutation>& generators() const { return generators_; }

    int index_of(const Permutation& p) const {
        auto it = index_.find(p);
        return it == index_.end() ? -1 : it->second;
    }

    int mult(int i, int j) const {
        int r = index_of(elements_[i].then(elements_[j]));
        check_internal(r >= 0, "group not closed under multiplication");
        return r;
    }

    int inverse(int i) const { return inverse_[i]; }

    long long element_order(int i) const { return element_order_[i]; }

    int conjugate(int x, int by) const {
        // inverse(by) * x * by, evaluated on permutations directly
        const Permutation w = elements_[inverse_[by]].then(elements_[x]).then(elements_[by]);
        int r = index_of(w);
        check_internal(r >= 0, "conjugate left the group");
        return r;
    }

    int num_classes() const { return static_cast<int>(class_members_.size()); }
    int class_of(int element) const { return class_of_[element]; }
    int class_rep(int cls) const { return class_members_[cls].front(); }
    int class_size(int cls) const { return static_cast<int>(class_members_[cls].size()); }
    const std::vector<int>& class_members(int cls) const { return class_members_[cls]; }

    long long exponent() const {
        long long e = 1;
        for (int c = 0; c < num_classes(); ++c) e = std::lcm(e, element_order(class_rep(c)));
        return e;
    }

    bool is_abelian() const {
        for (auto& a : generators_)
            for (auto& b : generators_)
                if (!(a.then(b) == b.then(a))) return false;
        return true;
    }

private:
    Group(int degree, std::vector<Permutation> gens, int element_cap) : degree_(degree) {
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        std::erase_if(gens, [](const Permutation& p) { return p.is_identity(); });
        generators_ = gens;

        elements_.push_back(Permutation::identity(degree));
        index_[elements_[0]] = 0;
        for (size_t head = 0; head < elements_.size(); ++head) {
            for (const auto& g : generators_) {
                Permutation next = elements_[head].then(g);
                if (index_.count(next)) continue;
                if (static_cast<int>(elements_.size()) >= element_cap)
                    throw CapError("group closure exceeded element cap " + std::to_string(element_cap));
                index_[next] = static_cast<int>(elements_.size());
                elements_.push_back(std::move(next));
            }
        }
        finish_tables();
    }

    void finish_tables() {
        int n = order();
        inverse_.resize(n);
        element_order_.resize(n);
        for (int i = 0; i < n; ++i) {
            inverse_[i] = index_.at(elements_[i].inverse());
            element_order_[i] = elements_[i].order();
        }

        class_of_.assign(n, -1);
        for (int i = 0; i < n; ++i) {
            if (class_of_[i] >= 0) continue;
            int cls = static_cast<int>(class_members_.size());
            std::vector<int> orbit{i};
            class_of_[i] = cls;
            for (size_t head = 0; head < orbit.size(); ++head) {
                for (const auto& g : generators_) {
                    const Permutation w = g.inverse().then(elements_[orbit[head]]).then(g);
                    int j = index_.at(w);
                    if (class_of_[j] < 0) {
                        class_of_[j] = cls;
                        orbit.push_back(j);
                    }
                }
            }
            std::sort(orbit.begin(), orbit.end());
            class_members_.push_back(std::move(orbit));
        }
    }

    int degree_ = 0;
    std::vector<Permutation> generators_;
    std::vector<Permutation> elements_;
    std::unordered_map<Permutation, int, PermHash> index_;
    std::vector<int> inverse_;
    std::vector<long long> element_order_;
    std::vector<int> class_of_;
    std::vector<std::vector<int>> class_members_;
};

/// A subgroup recorded as a sorted set of parent element indices.
struct Subgroup {
    const Group* parent = nullptr;
    std::vector<int> members; // sorted, includes 0

    int order() const { return static_cast<int>(members.size()); }

    bool contains(int element) const {
        return std::binary_search(members.begin(), members.end(), element);
    }
};

inline Subgroup whole_group(const Group& g) {
    Subgroup s;
    s.parent = &g;
    s.members.resize(g.order());
    std::iota(s.members.begin(), s.members.end(), 0);
    return s;
}

inline Subgroup trivial_subgroup(const Group& g) {
    return Subgroup{&g, {0}};
}

/// C_G(x): all elements commuting with x.
inline Subgroup centralizer(const Group& g, int x) {
    Subgroup s;
    s.parent = &g;
    for (int h = 0; h < g.order(); ++h)
        if (g.mult(h, x) == g.mult(x, h)) s.members.push_back(h);
    return s;
}

/// C_G(S) for a set of elements: the intersection of their centralizers.
inline Subgroup centralizer_of_set(const Group& g, const std::vector<int>& xs) {
    Subgroup s;
    s.parent = &g;
    for (int h = 0; h < g.order(); ++h) {
        bool ok = true;
        for (int x : xs)
            if (g.mult(h, x) != g.mult(x, h)) {
                ok = false;
                break;
            }
        if (ok) s.members.push_back(h);
    }
    return s;
}

/// N_G(H): elements whose conjugation fixes H setwise.
inline Subgroup normalizer(const Group& g, const Subgroup& h) {
    Subgroup s;
    s.parent = &g;
    for (int n = 0; n < g.order(); ++n) {
        bool ok = true;
        for (int m : h.members)
            if (!h.contains(g.conjugate(m, n))) {
                ok = false;
                break;
            }
        if (ok) s.members.push_back(n);
    }
    return s;
}

inline bool is_normal(const Group& g, const Subgroup& h) {
    return normalizer(g, h).order() == g.order();
}

/// Closes a set of elements under multiplication and inverse.
inline std::vector<int> closure(const Group& g, std::vector<int> seed) {
    std::vector<char> in(g.order(), 0);
    std::vector<int> out;
    auto push = [&](int e) {
        if (!in[e]) {
            in[e] = 1;
            out.push_back(e);
        }
    };
    push(0);
    for (int e : seed) push(e);
    for (size_t head = 0; head < out.size(); ++head)
        for (size_t gi = 0; gi < out.size(); ++gi) {
            push(g.mult(out[head], out[gi]));
            if (out.size() > static_cast<size_t>(g.order()))
                throw InternalError("closure exceeded group order");
        }
    std::sort(out.begin(), out.end());
    return out;
}

/// A small generating set for a given member set, grown greedily.
inline std::vector<int> small_generating_set(const Group& g, const std::vector<int>& members) {
    std::vector<int> gens;
    std::vector<int> current{0};
    while (current.size() < members.size()) {
        int next = -1;
        for (int m : members)
            if (!std::binary_search(current.begin(), current.end(), m)) {
                next = m;
                break;
            }
        check_internal(next >= 0, "member set not closed");
        gens.push_back(next);
        std::vector<int> seed = gens;
        current = closure(g, seed);
    }
    return gens;
}

namespace detail {

inline int p_part(long long n, int p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline long long power_of(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace detail

/// Sylow p-subgroup of the set `members` (which must be a subgroup), grown
/// from a maximal-order p-element by repeated extension inside normalizers.
inline Subgroup sylow_in(const Group& g, const std::vector<int>& members, int p) {
    long long target = detail::power_of(p, detail::p_part(static_cast<long long>(members.size()), p));
    // seed: maximal-order p-element, smallest index
    int seed = 0;
    long long best = 1;
    for (int m : members) {
        long long o = g.element_order(m);
        bool is_p_power = true;
        long long t = o;
        while (t > 1) {
            if (t % p != 0) {
                is_p_power = false;
                break;
            }
            t /= p;
        }
        if (is_p_power && o > best) {
            best = o;
            seed = m;
        }
    }
    std::vector<int> current = closure(g, {seed});
    while (static_cast<long long>(current.size()) < target) {
        // normalizer of `current` within `members`
        std::vector<int> norm;
        for (int n : members) {
            bool ok = true;
            for (int m : current)
                if (!std::binary_search(current.begin(), current.end(), g.conjugate(m, n))) {
                    ok = false;
                    break;
                }
            if (ok) norm.push_back(n);
        }
        int grow = -1;
        for (int y : norm) {
            if (std::binary_search(current.begin(), current.end(), y)) continue;
            long long o = g.element_order(y);
            bool is_p_power = true;
            while (o > 1) {
                if (o % p != 0) {
                    is_p_power = false;
                    break;
                }
                o /= p;
            }
            if (is_p_power) {
                grow = y;
                break;
            }
        }
        check_internal(grow >= 0, "sylow growth found no p-element in normalizer");
        std::vector<int> seedset = current;
        seedset.push_back(grow);
        current = closure(g, seedset);
    }
    Subgroup s;
    s.parent = &g;
    s.members = std::move(current);
    return s;
}

inline Subgroup sylow_subgroup(const Group& g, int p) {
    return sylow_in(g, whole_group(g).members, p);
}

/// Commuting decomposition x = x_p * x_{p'}: returns element indices of the
/// p-part and p-regular part, both powers of x.
inline std::pair<int, int> p_decompose(const Group& g, int x, int p) {
    long long n = g.element_order(x);
    long long pa = 1;
    long long m = n;
    while (m % p == 0) {
        m /= p;
        pa *= p;
    }
    if (pa == 1) return {0, x};
    if (m == 1) return {x, 0};
    // exponents: beta*m = 1 mod pa, alpha*pa = 1 mod m
    auto inv_mod = [](long long a, long long mod) {
        long long t = 0, newt = 1, r = mod, newr = a % mod;
        while (newr != 0) {
            long long q = r / newr;
            std::swap(t -= q * newt, newt);
            std::swap(r -= q * newr, newr);
        }
        return ((t % mod) + mod) % mod;
    };
    long long beta = inv_mod(m % pa, pa);
    long long alpha = inv_mod(pa % m, m);
    auto power = [&](long long e) {
        e %= n;
        int acc = 0;
        int b = x;
        while (e > 0) {
            if (e & 1) acc = g.mult(acc, b);
            b = g.mult(b, b);
            e >>= 1;
        }
        return acc;
    };
    int xp = power(beta * m % n);
    int xpp = power(alpha * pa % n);
    check_internal(g.mult(xp, xpp) == x && g.mult(xpp, xp) == x, "p-decomposition does not recompose");
    return {xp, xpp};
}

/// A subgroup re-enumerated as a standalone Group, with index maps in both
/// directions.
struct SubgroupGroup {
    Group group;
    std::vector<int> to_parent;   // local index -> parent index
    std::vector<int> from_parent; // parent index -> local index or -1
};

inline SubgroupGroup subgroup_as_group(const Group& g, const std::vector<int>& members) {
    std::vector<Permutation> perms;
    perms.reserve(members.size());
    for (int m : members) perms.push_back(g.perm(m));
    SubgroupGroup out{Group::from_members(g.degree(), perms), {}, {}};
    check_internal(out.group.order() == static_cast<int>(members.size()),
                   "member set was not closed when regenerating subgroup");
    out.to_parent.resize(members.size());
    out.from_parent.assign(g.order(), -1);
    for (int i = 0; i < out.group.order(); ++i) {
        int parent = g.index_of(out.group.perm(i));
        check_internal(parent >= 0, "subgroup element missing from parent");
        out.to_parent[i] = parent;
        out.from_parent[parent] = i;
    }
    return out;
}

/// Quotient by a central cyclic subgroup <x>, realized as a permutation
/// group on the cosets (regular action). Returns the quotient and the
/// projection map on element indices.
struct QuotientResult {
    Group group;
    std::vector<int> map; // parent element index -> quotient element index
};

inline QuotientResult quotient_by_central_cyclic(const Group& g, int x) {
    for (const auto& gen : g.generators()) {
        int gi = g.index_of(gen);
        if (g.mult(gi, x) != g.mult(x, gi)) throw Error("element is not central, cannot form cyclic quotient");
    }
    long long ox = g.element_order(x);
    int n = g.order();
    // enumerate <x>
    std::vector<int> pow_x{0};
    int cur = x;
    while (cur != 0) {
        pow_x.push_back(cur);
        cur = g.mult(cur, x);
    }
    check_internal(static_cast<long long>(pow_x.size()) == ox, "cyclic subgroup size mismatch");
    // cosets keyed by minimal member; coset index by order of that minimal member
    std::vector<int> coset_of(n, -1);
    std::vector<int> coset_min;
    for (int e = 0; e < n; ++e) {
        if (coset_of[e] >= 0) continue;
        int c = static_cast<int>(coset_min.size());
        for (int t : pow_x) coset_of[g.mult(e, t)] = c;
        coset_min.push_back(e);
    }
    int q = static_cast<int>(coset_min.size());
    auto coset_perm = [&](int e) {
        std::vector<int> im(q);
        for (int c = 0; c < q; ++c) im[c] = coset_of[g.mult(coset_min[c], e)];
        return Permutation(std::move(im));
    };
    std::vector<Permutation> images;
    images.reserve(n);
    for (int e = 0; e < n; ++e) images.push_back(coset_perm(e));
    std::vector<Permutation> uniq = images;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    QuotientResult out{Group::from_members(q, uniq), {}};
    check_internal(out.group.order() == q, "quotient regular action has wrong order");
    out.map.resize(n);
    for (int e = 0; e < n; ++e) {
        int idx = out.group.index_of(images[e]);
        check_internal(idx >= 0, "quotient image missing");
        out.map[e] = idx;
    }
    return out;
}

/// Isomorphism-type data for a p-group: order, exponent, and (when abelian)
/// the invariant factors found by splitting off maximal-order cyclic
/// summands.
struct PGroupType {
    long long order = 1;
    long long exponent = 1;
    bool is_abelian = true;
    bool is_cyclic = true;
    std::vector<long long> invariant_factors; // descending; abelian only

    int log_order(int p) const { return detail::p_part(order, p); }
    int log_exponent(int p) const { return detail::p_part(exponent, p); }
};

namespace detail {

// invariant factors of an abelian p-group by iterated maximal-order cyclic
// splitting: factor out <a> for a of maximal order in the current quotient,
// tracked as cosets of a growing kernel K
inline std::vector<long long> abelian_invariant_factors(const Group& g, const std::vector<int>& members) {
    std::vector<long long> factors;
    std::vector<int> kernel{0};
    while (kernel.size() < members.size()) {
        // order of [a] in H/K = least t with a^t in K
        long long best_order = 0;
        int best = -1;
        for (int a : members) {
            if (std::binary_search(kernel.begin(), kernel.end(), a)) continue;
            long long t = 1;
            int cur = a;
            while (!std::binary_search(kernel.begin(), kernel.end(), cur)) {
                cur = g.mult(cur, a);
                ++t;
            }
            if (t > best_order) {
                best_order = t;
                best = a;
            }
        }
        check_internal(best >= 0, "no coset representative found");
        factors.push_back(best_order);
        std::vector<int> seed = kernel;
        seed.push_back(best);
        kernel = closure(g, seed);
    }
    return factors;
}

} // namespace detail

/// Classifies a p-subgroup. Errors when some element order is not a p-power.
inline PGroupType p_group_type(const Subgroup& h, int p) {
    const Group& g = *h.parent;
    PGroupType t;
    t.order = static_cast<long long>(h.members.size());
    for (int m : h.members) {
        long long o = g.element_order(m);
        long long r = o;
        while (r > 1) {
            if (r % p != 0) throw Error("subgroup is not a p-group");
            r /= p;
        }
        t.exponent = std::max(t.exponent, o);
    }
    {
        long long r = t.order;
        while (r > 1) {
            if (r % p != 0) throw Error("subgroup is not a p-group");
            r /= p;
        }
    }
    auto gens = small_generating_set(g, h.members);
    t.is_abelian = true;
    for (int a : gens)
        for (int b : gens)
            if (g.mult(a, b) != g.mult(b, a)) t.is_abelian = false;
    t.is_cyclic = (t.exponent == t.order);
    if (t.is_abelian) t.invariant_factors = detail::abelian_invariant_factors(g, h.members);
    return t;
}

/// Set product A*B as a subgroup (verified closed).
inline Subgroup product_subgroup(const Group& g, const Subgroup& a, const Subgroup& b) {
    std::vector<char> in(g.order(), 0);
    Subgroup s;
    s.parent = &g;
    for (int x : a.members)
        for (int y : b.members) {
            int z = g.mult(x, y);
            if (!in[z]) {
                in[z] = 1;
                s.members.push_back(z);
            }
        }
    std::sort(s.members.begin(), s.members.end());
    for (int x : s.members) {
        check_internal(s.contains(g.inverse(x)), "set product not closed under inverse");
    }
    for (int x : s.members)
        for (int y : b.members)
            check_internal(s.contains(g.mult(x, y)), "set product not a subgroup");
    return s;
}

/// |Aut(C_{p^m} x C_{p^n})| for the supported parameter ranges:
/// p = 2 with m >= n >= 1, and p = 3 with m = 1, n >= 1 (the C_3 x C_{3^n}
/// shape). Errors outside these ranges rather than extrapolating.
inline long long aut_order_rank2(int p, int m, int n) {
    if (p == 2) {
        if (m < n || n < 1) throw Error("aut_order_rank2: p=2 requires m >= n >= 1");
        if (m == n) return 3ll * detail::power_of(2, 4 * m - 3);
        return detail::power_of(2, m + 3 * n - 2);
    }
    if (p == 3) {
        if (m != 1 || n < 1) throw Error("aut_order_rank2: p=3 requires m = 1, n >= 1");
        if (n == 1) return 48;
        return 4ll * detail::power_of(3, n + 1);
    }
    throw Error("aut_order_rank2: only p in {2,3} is supported");
}

} // namespace zblock
