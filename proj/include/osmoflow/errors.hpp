#pragma once
// Error hierarchy and validation diagnostics shared by all osmoflow modules.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace osmoflow {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A single validation finding. Errors make a store/workflow invalid;
// warnings flag suspicious but admissible constructs.
struct Diagnostic {
    enum class Severity { Warning, Error };

    Severity severity = Severity::Error;
    std::string code;     // stable machine-readable identifier, e.g. "domain_violation"
    std::string subject;  // entity or triple the finding refers to
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

class ValidationReport {
public:
    void add_error(std::string code, std::string subject, std::string message) {
        items_.push_back({Diagnostic::Severity::Error, std::move(code),
                          std::move(subject), std::move(message)});
    }
    void add_warning(std::string code, std::string subject, std::string message) {
        items_.push_back({Diagnostic::Severity::Warning, std::move(code),
                          std::move(subject), std::move(message)});
    }

    const std::vector<Diagnostic>& items() const { return items_; }
    bool empty() const { return items_.empty(); }

    std::size_t error_count() const {
        std::size_t n = 0;
        for (const auto& d : items_)
            if (d.severity == Diagnostic::Severity::Error) ++n;
        return n;
    }
    std::size_t warning_count() const { return items_.size() - error_count(); }

    void merge(const ValidationReport& other) {
        items_.insert(items_.end(), other.items_.begin(), other.items_.end());
    }

    std::string to_string() const {
        std::string out;
        for (const auto& d : items_) {
            out += d.severity == Diagnostic::Severity::Error ? "error" : "warning";
            out += " [" + d.code + "] " + d.subject + ": " + d.message + "\n";
        }
        return out;
    }

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;

private:
    std::vector<Diagnostic> items_;
};

}  // namespace osmoflow
