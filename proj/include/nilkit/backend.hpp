#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilkit/element.hpp"

namespace nilkit {

class GroupBackend {
public:
    virtual ~GroupBackend() = default;

    // Group-spec string that rebuilds this backend (when it has one).
    virtual std::string spec() const = 0;

    virtual Element identity() const = 0;
    virtual Element multiply(const Element& a, const Element& b) const = 0;
    virtual Element invert(const Element& a) const = 0;

    // Brings a raw integer vector to canonical form, throwing InvalidInput
    // if it does not describe an element.
    virtual Element normalize(Element raw) const = 0;

    virtual bool is_finite() const = 0;
    // Group order for finite backends.
    virtual std::optional<std::size_t> order() const { return std::nullopt; }
    // All elements in canonical order; UnsupportedBackend when infinite.
    virtual std::vector<Element> elements() const;

    // The standard generators x_1, x_2, ... used by word evaluation.
    virtual std::vector<Element> generators() const = 0;

    // An upper bound on the nilpotency step, when the construction gives one.
    virtual std::optional<int> declared_step() const { return std::nullopt; }

    // Text form: whitespace-separated integers, text_width() of them.
    virtual std::size_t text_width() const = 0;
    virtual std::vector<Int> to_text_entries(const Element& e) const { return e; }
    virtual Element from_text_entries(const std::vector<Int>& entries) const { return normalize(entries); }

    std::string format(const Element& e) const { return join_entries(to_text_entries(e)); }
    Element parse(std::string_view text) const;

    bool equal(const Element& a, const Element& b) const { return a == b; }
    std::size_t hash(const Element& a) const { return ElementHash{}(a); }
};

using BackendPtr = std::shared_ptr<const GroupBackend>;

/* Upper unitriangular n x n matrices over Z (no modulus) or Z/m. Elements
 * store the strictly upper entries row by row; text form is the full matrix.
 */
class UnitriangularBackend final : public GroupBackend {
public:
    explicit UnitriangularBackend(int n, std::optional<std::int64_t> modulus = std::nullopt);

    int dimension() const noexcept { return n_; }
    std::optional<std::int64_t> modulus() const noexcept { return modulus_; }
    std::size_t entry_count() const noexcept { return static_cast<std::size_t>(n_ * (n_ - 1) / 2); }
    // Position of entry (i, j), 0-based with i < j, in the element vector.
    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(i * n_ - i * (i + 1) / 2 + (j - i - 1));
    }
    const Int& entry(const Element& e, int i, int j) const { return e[index(i, j)]; }

    // I + value * E_{i,j} (0-based).
    Element elementary(int i, int j, const Int& value = 1) const;

    std::string spec() const override;
    Element identity() const override;
    Element multiply(const Element& a, const Element& b) const override;
    Element invert(const Element& a) const override;
    Element normalize(Element raw) const override;
    bool is_finite() const override { return modulus_.has_value(); }
    std::optional<std::size_t> order() const override;
    std::vector<Element> elements() const override;
    std::vector<Element> generators() const override;
    std::optional<int> declared_step() const override { return n_ - 1; }
    std::size_t text_width() const override { return static_cast<std::size_t>(n_ * n_); }
    std::vector<Int> to_text_entries(const Element& e) const override;
    Element from_text_entries(const std::vector<Int>& entries) const override;

private:
    int n_;
    std::optional<std::int64_t> modulus_;
};

// Z/m_1 x ... x Z/m_k with modulus 0 meaning Z.
class CyclicProduct final : public GroupBackend {
public:
    explicit CyclicProduct(std::vector<std::int64_t> moduli);

    const std::vector<std::int64_t>& moduli() const noexcept { return moduli_; }

    std::string spec() const override;
    Element identity() const override;
    Element multiply(const Element& a, const Element& b) const override;
    Element invert(const Element& a) const override;
    Element normalize(Element raw) const override;
    bool is_finite() const override;
    std::optional<std::size_t> order() const override;
    std::vector<Element> elements() const override;
    std::vector<Element> generators() const override;
    std::optional<int> declared_step() const override { return 1; }
    std::size_t text_width() const override { return moduli_.size(); }

private:
    std::vector<std::int64_t> moduli_;
};

/* A finite group given by its multiplication table. Elements are {index}.
 * Generators are the non-identity elements in index order.
 */
class TableGroup final : public GroupBackend {
public:
    // Validates closure, identity, inverses and associativity (exhaustive up
    // to 64 elements, sampled above).
    explicit TableGroup(std::vector<std::vector<std::size_t>> table, std::string origin = "");

    std::size_t size() const noexcept { return table_.size(); }
    std::size_t identity_index() const noexcept { return identity_; }
    std::size_t product_index(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t inverse_index(std::size_t a) const { return inverse_[a]; }
    const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }
    static Element of(std::size_t index) { return {Int(index)}; }
    static std::size_t index_of(const Element& e) { return e.at(0).convert_to<std::size_t>(); }

    std::string spec() const override;
    Element identity() const override { return of(identity_); }
    Element multiply(const Element& a, const Element& b) const override;
    Element invert(const Element& a) const override;
    Element normalize(Element raw) const override;
    bool is_finite() const override { return true; }
    std::optional<std::size_t> order() const override { return table_.size(); }
    std::vector<Element> elements() const override;
    std::vector<Element> generators() const override;
    std::size_t text_width() const override { return 1; }

    // Table of an arbitrary finite backend, elements indexed in canonical order.
    static std::shared_ptr<TableGroup> from_backend(const GroupBackend& g);

private:
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> inverse_;
    std::size_t identity_ = 0;
    std::string origin_;
};

class ProductBackend final : public GroupBackend {
public:
    ProductBackend(BackendPtr left, BackendPtr right);

    const BackendPtr& left() const noexcept { return left_; }
    const BackendPtr& right() const noexcept { return right_; }
    std::pair<Element, Element> split(const Element& e) const;
    Element join(const Element& a, const Element& b) const;

    std::string spec() const override;
    Element identity() const override;
    Element multiply(const Element& a, const Element& b) const override;
    Element invert(const Element& a) const override;
    Element normalize(Element raw) const override;
    bool is_finite() const override { return left_->is_finite() && right_->is_finite(); }
    std::optional<std::size_t> order() const override;
    std::vector<Element> elements() const override;
    std::vector<Element> generators() const override;
    std::optional<int> declared_step() const override;
    std::size_t text_width() const override { return left_->text_width() + right_->text_width(); }
    std::vector<Int> to_text_entries(const Element& e) const override;
    Element from_text_entries(const std::vector<Int>& entries) const override;

private:
    BackendPtr left_;
    BackendPtr right_;
    std::size_t left_size_;
};

// Group-spec grammar: ut:N, ut:N:mod=M, cyclic:N, product:<spec>,<spec>,
// table:<file>.
BackendPtr parse_group_spec(std::string_view spec);

// Table file: N followed by N*N indices, row-major. '#' starts a comment.
std::shared_ptr<TableGroup> read_table_file(const std::string& path);
std::shared_ptr<TableGroup> parse_table_text(std::string_view text, const std::string& origin = "");

// Upper bound on elements() for backends that enumerate by closure.
inline constexpr std::size_t kMaxEnumeration = 1'000'000;

}  // namespace nilkit
