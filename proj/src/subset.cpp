#include "nilkit/subset.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "nilkit/errors.hpp"
#include "nilkit/text.hpp"

namespace nilkit {

Subset::Subset(BackendPtr backend, std::vector<Element> elements) : backend_(std::move(backend)) {
    for (auto& e : elements) {
        Element n = backend_->normalize(std::move(e));
        if (index_.insert(n).second) elements_.push_back(std::move(n));
    }
    std::sort(elements_.begin(), elements_.end(), CanonicalLess{});
    has_identity_ = index_.count(backend_->identity()) != 0;
    symmetric_ = std::all_of(elements_.begin(), elements_.end(),
                             [&](const Element& x) { return index_.count(backend_->invert(x)) != 0; });
}

Subset::Subset(BackendPtr backend, const ElementSet& elements)
    : Subset(std::move(backend), std::vector<Element>(elements.begin(), elements.end())) {}

Subset Subset::identity_only(BackendPtr backend) {
    auto e = backend->identity();
    return Subset(std::move(backend), std::vector<Element>{e});
}

Subset Subset::whole(BackendPtr backend) {
    auto elems = backend->elements();
    return Subset(std::move(backend), std::move(elems));
}

bool Subset::subset_of(const Subset& other) const {
    return std::all_of(elements_.begin(), elements_.end(), [&](const Element& x) { return other.contains(x); });
}

Subset Subset::inverse() const {
    std::vector<Element> out;
    out.reserve(size());
    for (const auto& x : elements_) out.push_back(backend_->invert(x));
    return Subset(backend_, std::move(out));
}

Subset Subset::symmetrized() const {
    std::vector<Element> out = elements_;
    for (const auto& x : elements_) out.push_back(backend_->invert(x));
    out.push_back(backend_->identity());
    return Subset(backend_, std::move(out));
}

Subset Subset::intersect(const Subset& other) const {
    return filter([&](const Element& x) { return other.contains(x); });
}

Subset Subset::unite(const Subset& other) const {
    std::vector<Element> out = elements_;
    out.insert(out.end(), other.elements_.begin(), other.elements_.end());
    return Subset(backend_, std::move(out));
}

Subset Subset::filter(const std::function<bool(const Element&)>& keep) const {
    std::vector<Element> out;
    for (const auto& x : elements_) {
        if (keep(x)) out.push_back(x);
    }
    return Subset(backend_, std::move(out));
}

Subset Subset::left_translate(const Element& g) const {
    std::vector<Element> out;
    out.reserve(size());
    for (const auto& x : elements_) out.push_back(backend_->multiply(g, x));
    return Subset(backend_, std::move(out));
}

Subset Subset::right_translate(const Element& g) const {
    std::vector<Element> out;
    out.reserve(size());
    for (const auto& x : elements_) out.push_back(backend_->multiply(x, g));
    return Subset(backend_, std::move(out));
}

std::string Subset::to_string() const {
    std::string out;
    for (const auto& x : elements_) out += backend_->format(x) + "\n";
    return out;
}

Subset product_set(const Subset& a, const Subset& b, std::size_t cap) {
    ElementSet out;
    for (const auto& x : a) {
        for (const auto& y : b) {
            out.insert(a.group().multiply(x, y));
            if (out.size() > cap) throw ResourceLimit("product set exceeded " + std::to_string(cap) + " elements");
        }
    }
    return Subset(a.backend(), out);
}

Subset power_set(const Subset& a, int n, std::size_t cap) {
    if (n < 1) throw InvalidParameter("power_set needs n >= 1");
    Subset out = a;
    for (int k = 1; k < n; ++k) {
        Subset next = product_set(out, a, cap);
        // Once A^k = A^{k+1} the powers are stable.
        if (next == out && a.contains_identity()) return out;
        out = std::move(next);
    }
    return out;
}

Subset generated_subgroup(BackendPtr backend, const std::vector<Element>& generators, std::size_t cap) {
    std::vector<Element> steps;
    for (const auto& g : generators) {
        steps.push_back(backend->normalize(g));
        steps.push_back(backend->invert(steps.back()));
    }
    ElementSet seen{backend->identity()};
    std::deque<Element> queue{backend->identity()};
    while (!queue.empty()) {
        Element g = std::move(queue.front());
        queue.pop_front();
        for (const auto& s : steps) {
            Element h = backend->multiply(g, s);
            if (seen.insert(h).second) {
                if (seen.size() > cap) throw ResourceLimit("subgroup closure exceeded " + std::to_string(cap) + " elements");
                queue.push_back(std::move(h));
            }
        }
    }
    return Subset(std::move(backend), seen);
}

bool is_subgroup(const Subset& s) {
    if (!s.contains_identity()) return false;
    for (const auto& x : s)
        for (const auto& y : s)
            if (!s.contains(s.group().multiply(x, y))) return false;
    return true;
}

Subset parse_set_text(BackendPtr backend, const std::string& text) {
    std::vector<Element> out;
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        try {
            out.push_back(backend->parse(line));
        } catch (const InvalidInput& e) {
            throw InvalidInput("set line " + std::to_string(number) + ": " + e.what());
        }
    }
    return Subset(std::move(backend), std::move(out));
}

Subset read_set_file(BackendPtr backend, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read set file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_set_text(std::move(backend), buffer.str());
}

}  // namespace nilkit
