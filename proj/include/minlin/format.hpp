// Copyright 2026 The minlin Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Instance text format:
//
//   # comment
//   mod 4
//   param 1
//   var s v u
//   ! 1*s = 1
//   2*s + 3*v = 0
//
// "!" marks a crisp equation. The var line is optional; without it variables
// are declared by first use. serialize() always writes the var line.

#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "minlin/equations.hpp"

namespace minlin {

namespace detail {

class LineParser {
 public:
  LineParser(std::string_view s, int line) : s_(s), line_(line) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected integer");
    if (pos_ - digits > 15) fail("integer too long");
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      fail("expected variable name");
    }
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '_' || s_[pos_] == '\'')) {
      ++pos_;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::kSyntaxError, "line " + std::to_string(line_) + ": " + what);
  }

  int line() const { return line_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

inline Instance parse_instance(const std::string& text) {
  Instance inst;
  bool have_mod = false;
  bool declared = false;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    detail::LineParser lp(line, line_no);
    auto keyword = [&](std::string_view kw) {
      return line.size() > kw.size() && line.substr(0, kw.size()) == kw &&
             std::isspace(static_cast<unsigned char>(line[kw.size()]));
    };
    if (keyword("mod")) {
      if (have_mod) lp.fail("duplicate mod line");
      detail::LineParser rest(line.substr(3), line_no);
      const Int m = rest.integer();
      if (!rest.at_end()) rest.fail("trailing input after modulus");
      inst.ring = factorize(m);
      have_mod = true;
      continue;
    }
    if (!have_mod) lp.fail("expected 'mod M' before other statements");
    if (keyword("param")) {
      detail::LineParser rest(line.substr(5), line_no);
      const Int k = rest.integer();
      if (k < 0) rest.fail("negative parameter");
      if (!rest.at_end()) rest.fail("trailing input after parameter");
      inst.k = static_cast<int>(k);
      continue;
    }
    if (keyword("var")) {
      if (!inst.eqs.empty()) lp.fail("var line after equations");
      detail::LineParser rest(line.substr(3), line_no);
      while (!rest.at_end()) {
        const std::string name = rest.ident();
        if (inst.find_var(name) >= 0) rest.fail("duplicate variable " + name);
        inst.add_var(name);
        rest.accept(',');
      }
      declared = true;
      continue;
    }
    const bool crisp = lp.accept('!');
    auto coefficient = [&](Int value) {
      if (value < 0 || value >= inst.ring.m) {
        throw Error(ErrorKind::kCoefficientOutOfRange,
                    "line " + std::to_string(line_no) + ": " + std::to_string(value) +
                        " not in [0, " + std::to_string(inst.ring.m) + ")");
      }
      return value;
    };
    auto variable = [&](const std::string& name) {
      int idx = inst.find_var(name);
      if (idx >= 0) return idx;
      if (declared) {
        throw Error(ErrorKind::kUndeclaredVariable,
                    "line " + std::to_string(line_no) + ": " + name);
      }
      return inst.add_var(name);
    };
    const Int a = coefficient(lp.integer());
    lp.expect('*');
    const int u = variable(lp.ident());
    if (lp.accept('+')) {
      const Int b = coefficient(lp.integer());
      lp.expect('*');
      const int v = variable(lp.ident());
      lp.expect('=');
      const Int c = coefficient(lp.integer());
      if (!lp.at_end()) lp.fail("trailing input after equation");
      inst.add_binary(a, u, b, v, c, crisp);
    } else {
      lp.expect('=');
      const Int c = coefficient(lp.integer());
      if (!lp.at_end()) lp.fail("trailing input after equation");
      inst.add_unary(a, u, c, crisp);
    }
  }
  if (!have_mod) throw Error(ErrorKind::kSyntaxError, "line " + std::to_string(line_no) + ": missing mod line");
  return inst;
}

inline std::string format_equation(const Instance& inst, const Equation& e) {
  std::string s = e.crisp ? "! " : "";
  s += std::to_string(e.a) + "*" + inst.vars[e.u];
  if (!e.is_unary()) s += " + " + std::to_string(e.b) + "*" + inst.vars[e.v];
  s += " = " + std::to_string(e.c);
  return s;
}

inline std::string serialize_instance(const Instance& inst) {
  std::string out = "mod " + std::to_string(inst.ring.m) + "\n";
  out += "param " + std::to_string(inst.k) + "\n";
  out += "var";
  for (const auto& v : inst.vars) out += " " + v;
  out += "\n";
  for (const auto& e : inst.eqs) out += format_equation(inst, e) + "\n";
  return out;
}

inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["mod"] = inst.ring.m;
  j["param"] = inst.k;
  j["vars"] = inst.vars;
  auto eqs = nlohmann::json::array();
  for (const auto& e : inst.eqs) {
    nlohmann::json je;
    je["a"] = e.a;
    je["u"] = inst.vars[e.u];
    if (!e.is_unary()) {
      je["b"] = e.b;
      je["v"] = inst.vars[e.v];
    }
    je["c"] = e.c;
    je["crisp"] = e.crisp;
    eqs.push_back(je);
  }
  j["equations"] = eqs;
  return j;
}

inline Instance instance_from_json(const nlohmann::json& j) {
  Instance inst;
  try {
    inst.ring = factorize(j.at("mod").get<Int>());
    inst.k = j.value("param", 0);
    for (const auto& v : j.at("vars")) inst.add_var(v.get<std::string>());
    auto lookup = [&](const std::string& name) {
      const int idx = inst.find_var(name);
      if (idx < 0) throw Error(ErrorKind::kUndeclaredVariable, name);
      return idx;
    };
    auto coefficient = [&](Int value) {
      if (value < 0 || value >= inst.ring.m) {
        throw Error(ErrorKind::kCoefficientOutOfRange, std::to_string(value));
      }
      return value;
    };
    for (const auto& je : j.at("equations")) {
      const bool crisp = je.value("crisp", false);
      const Int a = coefficient(je.at("a").get<Int>());
      const int u = lookup(je.at("u").get<std::string>());
      const Int c = coefficient(je.at("c").get<Int>());
      if (je.contains("v")) {
        inst.add_binary(a, u, coefficient(je.at("b").get<Int>()),
                        lookup(je.at("v").get<std::string>()), c, crisp);
      } else {
        inst.add_unary(a, u, c, crisp);
      }
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kSyntaxError, ex.what());
  }
  return inst;
}

}  // namespace minlin
