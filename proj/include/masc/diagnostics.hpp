#pragma once

#include <string>
#include <vector>

namespace masc {

struct SrcLoc {
  int line = 0;
  int col = 0;
  bool valid() const { return line > 0; }
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  SrcLoc loc;
  std::string message;

  std::string str() const {
    std::string out;
    if (loc.valid())
      out += std::to_string(loc.line) + ":" + std::to_string(loc.col) + ": ";
    out += severity == Severity::Error ? "error: " : "warning: ";
    out += message;
    return out;
  }
};

class Diagnostics {
 public:
  void error(SrcLoc loc, std::string msg) {
    items_.push_back({Severity::Error, loc, std::move(msg)});
  }
  void warning(SrcLoc loc, std::string msg) {
    items_.push_back({Severity::Warning, loc, std::move(msg)});
  }
  bool hasErrors() const {
    for (const auto& d : items_)
      if (d.severity == Severity::Error) return true;
    return false;
  }
  const std::vector<Diagnostic>& items() const { return items_; }
  std::string str() const {
    std::string out;
    for (const auto& d : items_) out += d.str() + "\n";
    return out;
  }

 private:
  std::vector<Diagnostic> items_;
};

}  // namespace masc
