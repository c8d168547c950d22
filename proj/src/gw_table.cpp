#include "qhfib/gw_table.hpp"

#include "qhfib/errors.hpp"

#include <algorithm>

namespace qhfib {

GWTable::GWTable(std::vector<int> degrees, H2Lattice lattice, Level complete_below, Rational energy_offset)
    : degrees_(std::move(degrees)),
      lattice_(std::move(lattice)),
      complete_below_(std::move(complete_below)),
      energy_offset_(std::move(energy_offset)) {}

bool GWTable::SlotOrder::operator()(const Slot& a, const Slot& b) const {
    if (a.key.omega != b.key.omega) return a.key.omega < b.key.omega;
    if (a.key.chern != b.key.chern) return a.key.chern < b.key.chern;
    return a.args < b.args;
}

void GWTable::declare(std::size_t arity) {
    if (arity < 2 || arity > 4) throw ParseError("GW tables hold 2-, 3- and 4-point invariants only");
    arity_.try_emplace(arity);
}

bool GWTable::has(std::size_t arity) const { return arity_.count(arity) != 0; }

std::vector<std::size_t> GWTable::arities() const {
    std::vector<std::size_t> out;
    for (const auto& [a, _] : arity_) out.push_back(a);
    return out;
}

int GWTable::canonicalize(std::vector<std::size_t>& args) const {
    int sign = 1;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] >= degrees_.size()) throw ParseError("GW entry argument out of range");
        for (std::size_t j = i + 1; j < args.size(); ++j)
            if (args[j] < args[i] && degrees_[args[i]] % 2 != 0 && degrees_[args[j]] % 2 != 0) sign = -sign;
    }
    std::sort(args.begin(), args.end());
    return sign;
}

void GWTable::add(const std::vector<std::size_t>& args, const NovKey& key, const Rational& value) {
    declare(args.size());
    std::vector<std::size_t> sorted = args;
    const int sign = canonicalize(sorted);
    auto& values = arity_[args.size()];
    auto [it, inserted] = values.try_emplace(Slot{key, sorted}, sign * value);
    if (!inserted) it->second += sign * value;
    if (it->second == 0) values.erase(it);
}

void GWTable::add(const std::vector<std::size_t>& args, const Vec& coords, const Rational& value) {
    add(args, lattice_.key(coords), value);
}

void GWTable::set(const std::vector<std::size_t>& args, const NovKey& key, const Rational& value) {
    add(args, key, value - stored(args, key));
}

Rational GWTable::stored(const std::vector<std::size_t>& args, const NovKey& key) const {
    auto a = arity_.find(args.size());
    if (a == arity_.end()) return 0;
    std::vector<std::size_t> sorted = args;
    const int sign = canonicalize(sorted);
    auto it = a->second.find(Slot{key, sorted});
    return it == a->second.end() ? Rational(0) : Rational(sign * it->second);
}

void GWTable::require(std::size_t arity, const NovKey& key) const {
    if (!has(arity))
        throw TableIncomplete("no " + std::to_string(arity) + "-point invariants are available");
    if (!covers(key))
        throw TableIncomplete(std::to_string(arity) + "-point invariants in class " + lattice_.format(key) +
                              " (energy " + to_string(class_energy(key)) + ") lie above the completeness level " +
                              level_to_string(complete_below_));
}

void GWTable::require_energy(std::size_t arity, const Rational& class_energy_bound) const {
    if (!has(arity))
        throw TableIncomplete("no " + std::to_string(arity) + "-point invariants are available");
    if (!level_covers(complete_below_, class_energy_bound))
        throw TableIncomplete(std::to_string(arity) + "-point invariants are needed up to energy " +
                              to_string(class_energy_bound) + " but the table is complete only up to " +
                              level_to_string(complete_below_));
}

Rational GWTable::lookup(const std::vector<std::size_t>& args, const NovKey& key) const {
    require(args.size(), key);
    return stored(args, key);
}

Rational GWTable::evaluate(const std::vector<Vec>& args, const NovKey& key) const {
    require(args.size(), key);
    std::vector<std::vector<std::pair<std::size_t, Rational>>> support(args.size());
    for (std::size_t a = 0; a < args.size(); ++a) {
        for (std::size_t i = 0; i < args[a].size(); ++i)
            if (args[a][i] != 0) support[a].emplace_back(i, args[a][i]);
        if (support[a].empty()) return 0;
    }
    Rational total;
    std::vector<std::size_t> pos(args.size(), 0);
    std::vector<std::size_t> idx(args.size());
    while (true) {
        Rational coef = 1;
        for (std::size_t a = 0; a < args.size(); ++a) {
            idx[a] = support[a][pos[a]].first;
            coef *= support[a][pos[a]].second;
        }
        const Rational v = stored(idx, key);
        if (v != 0) total += coef * v;
        std::size_t a = 0;
        while (a < args.size() && ++pos[a] == support[a].size()) pos[a++] = 0;
        if (a == args.size()) break;
    }
    return total;
}

std::vector<GWTable::Entry> GWTable::entries(std::size_t arity) const {
    std::vector<Entry> out;
    auto a = arity_.find(arity);
    if (a == arity_.end()) return out;
    for (const auto& [slot, v] : a->second) out.push_back({slot.args, slot.key, v});
    return out;
}

std::vector<NovKey> GWTable::keys(std::size_t arity) const {
    std::vector<NovKey> out;
    for (const auto& e : entries(arity))
        if (out.empty() || !(out.back() == e.key)) out.push_back(e.key);
    return out;
}

std::vector<NovKey> GWTable::all_keys() const {
    std::vector<NovKey> out;
    for (const auto& [arity, _] : arity_)
        for (const auto& k : keys(arity))
            if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    std::sort(out.begin(), out.end(), [](const NovKey& a, const NovKey& b) {
        return a.omega != b.omega ? a.omega < b.omega : a.chern < b.chern;
    });
    return out;
}

std::optional<Rational> GWTable::min_class_energy() const {
    std::optional<Rational> best;
    for (const auto& [arity, values] : arity_)
        if (!values.empty()) {
            const Rational e = class_energy(values.begin()->first.key);
            if (!best || e < *best) best = e;
        }
    return best;
}

std::string GWTable::describe(const Entry& e, const std::vector<std::string>& labels) const {
    std::string out = "n(";
    for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        out += e.args[i] < labels.size() ? labels[e.args[i]] : std::to_string(e.args[i]);
    }
    return out + "; " + lattice_.format(e.key) + ") = " + to_string(e.value);
}

bool GWTable::dimension_rule(const std::vector<std::size_t>& args, const NovKey& key, int half_dim) const {
    Rational codim = 0;
    for (auto a : args) codim += 2 * half_dim - degrees_.at(a);
    // The four-point table fixes the cross-ratio, which cuts two real dimensions.
    const int marked = args.size() == 2 ? -1 : 0;
    const Rational expected = 2 * half_dim + 2 * (key.chern + chern_offset_) + 2 * marked;
    return codim == expected;
}

bool GWTable::operator==(const GWTable& other) const {
    if (degrees_ != other.degrees_ || complete_below_ != other.complete_below_ ||
        energy_offset_ != other.energy_offset_ || chern_offset_ != other.chern_offset_ ||
        section_ != other.section_ || arities() != other.arities())
        return false;
    for (const auto& [arity, values] : arity_) {
        const auto& theirs = other.arity_.at(arity);
        if (values.size() != theirs.size()) return false;
        auto it = theirs.begin();
        for (const auto& [slot, v] : values) {
            if (!(slot.key == it->first.key) || slot.args != it->first.args || v != it->second) return false;
            ++it;
        }
    }
    return true;
}

} // namespace qhfib
