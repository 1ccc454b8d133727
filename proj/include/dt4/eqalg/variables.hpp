#pragma once

#include <array>
#include <cstddef>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dt4
{

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Upper bound on the number of distinct equivariant parameters in one session.
inline constexpr std::size_t kMaxVars = 8;

/// Process-wide registry of named parameters.
///
/// The standard parameters are registered at construction in a fixed order,
/// which also fixes the graded-lex variable order used by canonical forms:
///   s (weight of t), sp (weight of t'), e1, e2 (toric chart weights),
///   lam (direction parameter for generic specializations).
/// Further names may be registered, but only before worker threads start.
class VariableRegistry
{
public:
    static VariableRegistry &global()
    {
        static VariableRegistry reg;
        return reg;
    }

    std::size_t index(std::string_view name)
    {
        std::lock_guard lock(mutex_);
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i] == name) {
                return i;
            }
        }
        if (names_.size() == kMaxVars) {
            throw Error("variable registry full, cannot register '" + std::string(name) + "'");
        }
        names_.emplace_back(name);
        return names_.size() - 1;
    }

    std::optional<std::size_t> find(std::string_view name) const
    {
        std::lock_guard lock(mutex_);
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i] == name) {
                return i;
            }
        }
        return std::nullopt;
    }

    std::string name(std::size_t i) const
    {
        std::lock_guard lock(mutex_);
        if (i >= names_.size()) {
            throw Error("unregistered variable index " + std::to_string(i));
        }
        return names_[i];
    }

    std::size_t size() const
    {
        std::lock_guard lock(mutex_);
        return names_.size();
    }

private:
    VariableRegistry() : names_{"s", "sp", "e1", "e2", "lam"} {}

    mutable std::mutex mutex_;
    std::vector<std::string> names_;
};

namespace var
{
inline const std::size_t s = VariableRegistry::global().index("s");
inline const std::size_t sp = VariableRegistry::global().index("sp");
inline const std::size_t e1 = VariableRegistry::global().index("e1");
inline const std::size_t e2 = VariableRegistry::global().index("e2");
inline const std::size_t lam = VariableRegistry::global().index("lam");
} // namespace var

} // namespace dt4
