#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>

#include "nilkit/backend.hpp"
#include "nilkit/errors.hpp"
#include "nilkit/text.hpp"

namespace nilkit {

std::vector<Element> GroupBackend::elements() const {
    if (!is_finite()) throw UnsupportedBackend(spec() + " is infinite and cannot be enumerated");
    ElementSet seen{identity()};
    std::deque<Element> queue{identity()};
    const auto gens = generators();
    while (!queue.empty()) {
        Element g = std::move(queue.front());
        queue.pop_front();
        for (const auto& x : gens) {
            Element h = multiply(g, x);
            if (seen.insert(h).second) {
                if (seen.size() > kMaxEnumeration) throw ResourceLimit("enumeration of " + spec() + " too large");
                queue.push_back(std::move(h));
            }
        }
    }
    std::vector<Element> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

namespace {

std::vector<Int> read_integers(std::string_view text) {
    std::vector<Int> out;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
        if (token[0] == '#') break;
        try {
            out.emplace_back(token);
        } catch (const std::exception&) {
            throw InvalidInput("not an integer: '" + token + "'");
        }
    }
    return out;
}

}  // namespace

Element GroupBackend::parse(std::string_view text) const {
    auto entries = read_integers(text);
    if (entries.size() != text_width()) {
        throw InvalidInput("expected " + std::to_string(text_width()) + " integers for an element of " + spec() +
                           ", got " + std::to_string(entries.size()));
    }
    return from_text_entries(entries);
}

// ---------------------------------------------------------------- unitriangular

UnitriangularBackend::UnitriangularBackend(int n, std::optional<std::int64_t> modulus) : n_(n), modulus_(modulus) {
    if (n < 1) throw InvalidParameter("ut:N needs N >= 1");
    if (modulus && *modulus < 2) throw InvalidParameter("ut:N:mod=M needs M >= 2");
}

std::string UnitriangularBackend::spec() const {
    return "ut:" + std::to_string(n_) + (modulus_ ? ":mod=" + std::to_string(*modulus_) : "");
}

Element UnitriangularBackend::identity() const { return Element(entry_count(), 0); }

Element UnitriangularBackend::elementary(int i, int j, const Int& value) const {
    if (i < 0 || j >= n_ || i >= j) throw InvalidParameter("elementary matrix needs 0 <= i < j < n");
    Element e = identity();
    e[index(i, j)] = value;
    return normalize(std::move(e));
}

Element UnitriangularBackend::multiply(const Element& a, const Element& b) const {
    Element c(entry_count());
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            Int v = a[index(i, j)] + b[index(i, j)];
            for (int k = i + 1; k < j; ++k) v += a[index(i, k)] * b[index(k, j)];
            c[index(i, j)] = std::move(v);
        }
    }
    if (modulus_) {
        for (auto& v : c) v = floor_mod(v, *modulus_);
    }
    return c;
}

Element UnitriangularBackend::invert(const Element& a) const {
    Element b(entry_count());
    for (int d = 1; d < n_; ++d) {
        for (int i = 0; i + d < n_; ++i) {
            const int j = i + d;
            Int v = -a[index(i, j)];
            for (int k = i + 1; k < j; ++k) v -= a[index(i, k)] * b[index(k, j)];
            b[index(i, j)] = std::move(v);
        }
    }
    if (modulus_) {
        for (auto& v : b) v = floor_mod(v, *modulus_);
    }
    return b;
}

Element UnitriangularBackend::normalize(Element raw) const {
    if (raw.size() != entry_count()) {
        throw InvalidInput(spec() + " elements have " + std::to_string(entry_count()) + " entries");
    }
    if (modulus_) {
        for (auto& v : raw) v = floor_mod(v, *modulus_);
    }
    return raw;
}

std::optional<std::size_t> UnitriangularBackend::order() const {
    if (!modulus_) return std::nullopt;
    Int total = 1;
    for (std::size_t k = 0; k < entry_count(); ++k) total *= *modulus_;
    if (total > Int(kMaxEnumeration) * 1000) throw ResourceLimit("order of " + spec() + " too large");
    return total.convert_to<std::size_t>();
}

std::vector<Element> UnitriangularBackend::elements() const {
    if (!modulus_) throw UnsupportedBackend(spec() + " is infinite and cannot be enumerated");
    const std::size_t total = *order();
    if (total > kMaxEnumeration) throw ResourceLimit("enumeration of " + spec() + " too large");
    std::vector<Element> out;
    out.reserve(total);
    Element e = identity();
    for (std::size_t count = 0; count < total; ++count) {
        out.push_back(e);
        for (std::size_t k = e.size(); k-- > 0;) {
            if (++e[k] < *modulus_) break;
            e[k] = 0;
        }
    }
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

std::vector<Element> UnitriangularBackend::generators() const {
    std::vector<Element> out;
    for (int i = 0; i + 1 < n_; ++i) out.push_back(elementary(i, i + 1));
    return out;
}

std::vector<Int> UnitriangularBackend::to_text_entries(const Element& e) const {
    std::vector<Int> out(static_cast<std::size_t>(n_ * n_), 0);
    for (int i = 0; i < n_; ++i) {
        out[static_cast<std::size_t>(i * n_ + i)] = 1;
        for (int j = i + 1; j < n_; ++j) out[static_cast<std::size_t>(i * n_ + j)] = e[index(i, j)];
    }
    return out;
}

Element UnitriangularBackend::from_text_entries(const std::vector<Int>& entries) const {
    if (entries.size() != text_width()) throw InvalidInput("expected a full " + std::to_string(n_) + "x" + std::to_string(n_) + " matrix");
    Element e(entry_count());
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            const Int& v = entries[static_cast<std::size_t>(i * n_ + j)];
            if (j > i) {
                e[index(i, j)] = v;
            } else {
                const Int want = i == j ? 1 : 0;
                const bool ok = modulus_ ? floor_mod(v - want, *modulus_) == 0 : v == want;
                if (!ok) throw InvalidInput("matrix is not upper unitriangular");
            }
        }
    }
    return normalize(std::move(e));
}

// ---------------------------------------------------------------- cyclic products

CyclicProduct::CyclicProduct(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
    for (auto m : moduli_) {
        if (m < 0) throw InvalidParameter("cyclic modulus must be >= 0 (0 means the integers)");
    }
}

std::string CyclicProduct::spec() const {
    std::string out;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        const std::string one = "cyclic:" + std::to_string(moduli_[i]);
        out = i == 0 ? one : "product:" + out + "," + one;
    }
    return out.empty() ? "cyclic:1" : out;
}

Element CyclicProduct::identity() const { return Element(moduli_.size(), 0); }

Element CyclicProduct::multiply(const Element& a, const Element& b) const {
    Element c(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        c[i] = a[i] + b[i];
        if (moduli_[i] > 0) c[i] = floor_mod(c[i], moduli_[i]);
    }
    return c;
}

Element CyclicProduct::invert(const Element& a) const {
    Element c(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        c[i] = moduli_[i] > 0 ? floor_mod(-a[i], moduli_[i]) : Int(-a[i]);
    }
    return c;
}

Element CyclicProduct::normalize(Element raw) const {
    if (raw.size() != moduli_.size()) {
        throw InvalidInput(spec() + " elements have " + std::to_string(moduli_.size()) + " entries");
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (moduli_[i] > 0) raw[i] = floor_mod(raw[i], moduli_[i]);
    }
    return raw;
}

bool CyclicProduct::is_finite() const {
    return std::all_of(moduli_.begin(), moduli_.end(), [](auto m) { return m > 0; });
}

std::optional<std::size_t> CyclicProduct::order() const {
    if (!is_finite()) return std::nullopt;
    std::size_t total = 1;
    for (auto m : moduli_) {
        if (__builtin_mul_overflow(total, static_cast<std::size_t>(m), &total)) throw ResourceLimit("group order overflows");
    }
    return total;
}

std::vector<Element> CyclicProduct::elements() const {
    if (!is_finite()) throw UnsupportedBackend(spec() + " is infinite and cannot be enumerated");
    const std::size_t total = *order();
    if (total > kMaxEnumeration) throw ResourceLimit("enumeration of " + spec() + " too large");
    std::vector<Element> out;
    out.reserve(total);
    Element e = identity();
    for (std::size_t count = 0; count < total; ++count) {
        out.push_back(e);
        for (std::size_t k = e.size(); k-- > 0;) {
            if (++e[k] < moduli_[k]) break;
            e[k] = 0;
        }
    }
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

std::vector<Element> CyclicProduct::generators() const {
    std::vector<Element> out;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        Element e = identity();
        e[i] = 1;
        out.push_back(normalize(std::move(e)));
    }
    return out;
}

// ---------------------------------------------------------------- tables

TableGroup::TableGroup(std::vector<std::vector<std::size_t>> table, std::string origin)
    : table_(std::move(table)), origin_(std::move(origin)) {
    const std::size_t n = table_.size();
    if (n == 0) throw InvalidInput("multiplication table is empty");
    for (const auto& row : table_) {
        if (row.size() != n) throw InvalidInput("multiplication table is not square");
        for (auto v : row) {
            if (v >= n) throw InvalidInput("table entry " + std::to_string(v) + " out of range");
        }
    }
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
        if (ok) {
            identity_ = e;
            found = true;
        }
    }
    if (!found) throw InvalidInput("multiplication table has no identity");
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
        }
        if (inverse_[a] == n) throw InvalidInput("element " + std::to_string(a) + " has no inverse");
    }
    auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
            throw InvalidInput("multiplication table is not associative at (" + std::to_string(a) + "," +
                               std::to_string(b) + "," + std::to_string(c) + ")");
        }
    };
    if (n <= 64) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) assoc(a, b, c);
    } else {
        std::mt19937_64 rng(n);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (int k = 0; k < 200000; ++k) assoc(pick(rng), pick(rng), pick(rng));
    }
}

std::string TableGroup::spec() const { return origin_.empty() ? "table:<memory>" : origin_; }

Element TableGroup::multiply(const Element& a, const Element& b) const {
    return of(table_[index_of(a)][index_of(b)]);
}

Element TableGroup::invert(const Element& a) const { return of(inverse_[index_of(a)]); }

Element TableGroup::normalize(Element raw) const {
    if (raw.size() != 1 || raw[0] < 0 || raw[0] >= table_.size()) {
        throw InvalidInput("table elements are indices 0.." + std::to_string(table_.size() - 1));
    }
    return raw;
}

std::vector<Element> TableGroup::elements() const {
    std::vector<Element> out;
    for (std::size_t i = 0; i < table_.size(); ++i) out.push_back(of(i));
    return out;
}

std::vector<Element> TableGroup::generators() const {
    std::vector<Element> out;
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if (i != identity_) out.push_back(of(i));
    }
    return out;
}

std::shared_ptr<TableGroup> TableGroup::from_backend(const GroupBackend& g) {
    const auto elems = g.elements();
    std::unordered_map<Element, std::size_t, ElementHash> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
    std::vector<std::vector<std::size_t>> table(elems.size(), std::vector<std::size_t>(elems.size()));
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = 0; b < elems.size(); ++b) table[a][b] = index.at(g.multiply(elems[a], elems[b]));
    return std::make_shared<TableGroup>(std::move(table), "table:<" + g.spec() + ">");
}

// ---------------------------------------------------------------- products

ProductBackend::ProductBackend(BackendPtr left, BackendPtr right)
    : left_(std::move(left)), right_(std::move(right)), left_size_(left_->identity().size()) {}

std::pair<Element, Element> ProductBackend::split(const Element& e) const {
    auto mid = e.begin() + static_cast<std::ptrdiff_t>(left_size_);
    return {Element(e.begin(), mid), Element(mid, e.end())};
}

Element ProductBackend::join(const Element& a, const Element& b) const {
    Element out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::string ProductBackend::spec() const { return "product:" + left_->spec() + "," + right_->spec(); }

Element ProductBackend::identity() const { return join(left_->identity(), right_->identity()); }

Element ProductBackend::multiply(const Element& a, const Element& b) const {
    auto [a1, a2] = split(a);
    auto [b1, b2] = split(b);
    return join(left_->multiply(a1, b1), right_->multiply(a2, b2));
}

Element ProductBackend::invert(const Element& a) const {
    auto [a1, a2] = split(a);
    return join(left_->invert(a1), right_->invert(a2));
}

Element ProductBackend::normalize(Element raw) const {
    if (raw.size() != identity().size()) throw InvalidInput("wrong number of entries for " + spec());
    auto [a1, a2] = split(raw);
    return join(left_->normalize(std::move(a1)), right_->normalize(std::move(a2)));
}

std::optional<std::size_t> ProductBackend::order() const {
    auto a = left_->order();
    auto b = right_->order();
    if (!a || !b) return std::nullopt;
    std::size_t total;
    if (__builtin_mul_overflow(*a, *b, &total)) throw ResourceLimit("group order overflows");
    return total;
}

std::vector<Element> ProductBackend::elements() const {
    if (!is_finite()) throw UnsupportedBackend(spec() + " is infinite and cannot be enumerated");
    if (*order() > kMaxEnumeration) throw ResourceLimit("enumeration of " + spec() + " too large");
    std::vector<Element> out;
    for (const auto& a : left_->elements())
        for (const auto& b : right_->elements()) out.push_back(join(a, b));
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

std::vector<Element> ProductBackend::generators() const {
    std::vector<Element> out;
    for (const auto& a : left_->generators()) out.push_back(join(a, right_->identity()));
    for (const auto& b : right_->generators()) out.push_back(join(left_->identity(), b));
    return out;
}

std::optional<int> ProductBackend::declared_step() const {
    auto a = left_->declared_step();
    auto b = right_->declared_step();
    if (!a || !b) return std::nullopt;
    return std::max(*a, *b);
}

std::vector<Int> ProductBackend::to_text_entries(const Element& e) const {
    auto [a, b] = split(e);
    auto out = left_->to_text_entries(a);
    auto rest = right_->to_text_entries(b);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

Element ProductBackend::from_text_entries(const std::vector<Int>& entries) const {
    if (entries.size() != text_width()) throw InvalidInput("wrong number of integers for " + spec());
    auto mid = entries.begin() + static_cast<std::ptrdiff_t>(left_->text_width());
    return join(left_->from_text_entries({entries.begin(), mid}), right_->from_text_entries({mid, entries.end()}));
}

// ---------------------------------------------------------------- specs

namespace {

std::int64_t spec_int(std::string_view text, std::string_view what) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidInput("bad " + std::string(what) + " in group spec: '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace

BackendPtr parse_group_spec(std::string_view spec) {
    const std::string s = trim(spec);
    std::string_view v = s;
    if (v.starts_with("ut:")) {
        v.remove_prefix(3);
        auto colon = v.find(':');
        const int n = static_cast<int>(spec_int(v.substr(0, colon), "dimension"));
        if (colon == std::string_view::npos) return std::make_shared<UnitriangularBackend>(n);
        auto rest = v.substr(colon + 1);
        if (!rest.starts_with("mod=")) throw InvalidInput("expected mod=M in '" + s + "'");
        return std::make_shared<UnitriangularBackend>(n, spec_int(rest.substr(4), "modulus"));
    }
    if (v.starts_with("cyclic:")) {
        return std::make_shared<CyclicProduct>(std::vector<std::int64_t>{spec_int(v.substr(7), "order")});
    }
    if (v.starts_with("product:")) {
        v.remove_prefix(8);
        for (std::size_t comma = v.find(','); comma != std::string_view::npos; comma = v.find(',', comma + 1)) {
            BackendPtr left;
            try {
                left = parse_group_spec(v.substr(0, comma));
            } catch (const InvalidInput&) {
                continue;
            } catch (const InvalidParameter&) {
                continue;
            }
            return std::make_shared<ProductBackend>(left, parse_group_spec(v.substr(comma + 1)));
        }
        throw InvalidInput("product spec needs two factors: '" + s + "'");
    }
    if (v.starts_with("table:")) return read_table_file(std::string(v.substr(6)));
    throw InvalidInput("unknown group spec '" + s + "'");
}

std::shared_ptr<TableGroup> parse_table_text(std::string_view text, const std::string& origin) {
    std::vector<std::size_t> values;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        line = line.substr(0, line.find('#'));
        std::istringstream ls(line);
        std::string token;
        while (ls >> token) values.push_back(static_cast<std::size_t>(spec_int(token, "table entry")));
    }
    if (values.empty()) throw InvalidInput("table file is empty");
    const std::size_t n = values[0];
    if (values.size() != 1 + n * n) {
        throw InvalidInput("table of order " + std::to_string(n) + " needs " + std::to_string(n * n) + " entries, got " +
                           std::to_string(values.size() - 1));
    }
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table[i][j] = values[1 + i * n + j];
    return std::make_shared<TableGroup>(std::move(table), origin);
}

std::shared_ptr<TableGroup> read_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read table file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_table_text(buffer.str(), "table:" + path);
}

}  // namespace nilkit
