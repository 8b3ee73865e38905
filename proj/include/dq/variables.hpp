#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dq {

/// Ordered variable names. Index 0 is always the distinguished variable
/// (t in the deformation plane, xi in the Borel plane, z1 for generic work).
/// Phase-space sets additionally record the number of degrees of freedom.
class VariableSet {
public:
    VariableSet() = default;

    explicit VariableSet(std::vector<std::string> names, int dof = 0)
        : names_(std::move(names)), dof_(dof)
    {
        if (names_.empty())
            throw std::invalid_argument("a variable set needs a distinguished variable");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!is_identifier(names_[i]))
                throw std::invalid_argument("invalid variable name '" + names_[i] + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j])
                    throw std::invalid_argument("duplicate variable name '" + names_[i] + "'");
        }
        if (dof_ < 0 || (dof_ > 0 && names_.size() != static_cast<std::size_t>(2 * dof_ + 1)))
            throw std::invalid_argument("phase-space variable count does not match dof");
    }

    /// (dist, q, p) for one degree of freedom, (dist, q1..qN, p1..pN) otherwise.
    static VariableSet phase_space(int dof, std::string distinguished = "t")
    {
        if (dof < 1)
            throw std::invalid_argument("phase space needs dof >= 1");
        std::vector<std::string> names{std::move(distinguished)};
        if (dof == 1) {
            names.emplace_back("q");
            names.emplace_back("p");
        } else {
            for (int j = 1; j <= dof; ++j)
                names.push_back("q" + std::to_string(j));
            for (int j = 1; j <= dof; ++j)
                names.push_back("p" + std::to_string(j));
        }
        return VariableSet(std::move(names), dof);
    }

    static bool is_identifier(std::string_view s)
    {
        if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
            return false;
        return std::all_of(s.begin(), s.end(), [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
        });
    }

    std::size_t size() const { return names_.size(); }
    int dof() const { return dof_; }
    bool is_phase_space() const { return dof_ > 0; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& distinguished() const { return names_.front(); }

    std::optional<std::size_t> find(std::string_view name) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name)
                return i;
        return std::nullopt;
    }

    std::size_t index_of(std::string_view name) const
    {
        if (auto i = find(name))
            return *i;
        throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
    }

    bool contains(std::string_view name) const { return find(name).has_value(); }

    /// Index of q_j / p_j, j in [0, dof).
    std::size_t q(int j) const
    {
        require_phase_space(j);
        return 1 + static_cast<std::size_t>(j);
    }
    std::size_t p(int j) const
    {
        require_phase_space(j);
        return 1 + static_cast<std::size_t>(dof_ + j);
    }

    /// Same names with the distinguished variable renamed; dof is kept.
    VariableSet with_distinguished(std::string name) const
    {
        auto names = names_;
        names.front() = std::move(name);
        return VariableSet(std::move(names), dof_);
    }

    /// Generic (non phase-space) set with `name` appended.
    VariableSet appended(std::string name) const
    {
        auto names = names_;
        names.push_back(std::move(name));
        return VariableSet(std::move(names));
    }

    friend bool operator==(const VariableSet& a, const VariableSet& b) { return a.names_ == b.names_; }

private:
    void require_phase_space(int j) const
    {
        if (dof_ < 1 || j < 0 || j >= dof_)
            throw std::out_of_range("phase-space index out of range");
    }

    std::vector<std::string> names_;
    int dof_ = 0;
};

/// Natural ordering for printing ("z2" before "z10", "p" before "q").
inline bool natural_less(std::string_view a, std::string_view b)
{
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
        bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
        if (da && db) {
            std::size_t ie = i, je = j;
            while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie])))
                ++ie;
            while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je])))
                ++je;
            auto na = a.substr(i, ie - i), nb = b.substr(j, je - j);
            while (na.size() > 1 && na[0] == '0')
                na.remove_prefix(1);
            while (nb.size() > 1 && nb[0] == '0')
                nb.remove_prefix(1);
            if (na.size() != nb.size())
                return na.size() < nb.size();
            if (na != nb)
                return na < nb;
            i = ie;
            j = je;
            continue;
        }
        if (a[i] != b[j])
            return a[i] < b[j];
        ++i;
        ++j;
    }
    return a.size() - i < b.size() - j;
}

} // namespace dq
