// Copyright 2026 The mmot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mmot/reward.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mmot/errors.hpp"

namespace mmot {

struct Reward::Node {
  enum class Kind { kConst, kSum, kProduct, kNegate, kIndicator, kCall, kPut, kAbs, kCoordinate, kTanhSm };
  enum class Compare { kLe, kLt, kGe, kGt, kEq };

  Kind kind = Kind::kConst;
  Rational value;
  std::size_t t = 0;
  Compare compare = Compare::kLe;
  std::vector<std::shared_ptr<const Node>> children;

  bool exact() const {
    if (kind == Kind::kTanhSm) return false;
    for (const auto& c : children) {
      if (!c->exact()) return false;
    }
    return true;
  }

  std::size_t max_time() const {
    std::size_t m = (kind == Kind::kConst || kind == Kind::kSum || kind == Kind::kProduct || kind == Kind::kNegate)
                        ? 0
                        : t;
    for (const auto& c : children) m = std::max(m, c->max_time());
    return m;
  }

  bool holds(const Rational& x) const {
    switch (compare) {
      case Compare::kLe:
        return x <= value;
      case Compare::kLt:
        return x < value;
      case Compare::kGe:
        return x >= value;
      case Compare::kGt:
        return x > value;
      case Compare::kEq:
        return x == value;
    }
    return false;
  }

  Rational eval(std::span<const Rational> x) const {
    switch (kind) {
      case Kind::kConst:
        return value;
      case Kind::kSum: {
        Rational s;
        for (const auto& c : children) s += c->eval(x);
        return s;
      }
      case Kind::kProduct: {
        Rational p(1);
        for (const auto& c : children) {
          p *= c->eval(x);
          if (p.is_zero()) break;
        }
        return p;
      }
      case Kind::kNegate:
        return -children[0]->eval(x);
      case Kind::kIndicator:
        return holds(x[t]) ? Rational(1) : Rational();
      case Kind::kCall:
        return positive_part(x[t] - value);
      case Kind::kPut:
        return positive_part(value - x[t]);
      case Kind::kAbs:
        return (x[t] - value).abs();
      case Kind::kCoordinate:
        return x[t];
      case Kind::kTanhSm:
        break;
    }
    throw std::logic_error("Reward: tanh_sm has no exact value");
  }

  double eval_float(std::span<const Rational> x) const {
    switch (kind) {
      case Kind::kSum: {
        double s = 0.0;
        for (const auto& c : children) s += c->eval_float(x);
        return s;
      }
      case Kind::kProduct: {
        double p = 1.0;
        for (const auto& c : children) p *= c->eval_float(x);
        return p;
      }
      case Kind::kNegate:
        return -children[0]->eval_float(x);
      case Kind::kTanhSm: {
        const double y = x[t].to_double();
        return std::tanh(x[0].to_double()) * std::sqrt(1.0 + y * y);
      }
      default:
        return eval(x).to_double();
    }
  }
};

namespace {

using Node = Reward::Node;
using NodePtr = std::shared_ptr<const Node>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("reward, column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expression() {
    auto sum = std::make_shared<Node>();
    sum->kind = Node::Kind::kSum;
    sum->children.push_back(term());
    while (true) {
      if (accept('+')) {
        sum->children.push_back(term());
      } else if (accept('-')) {
        sum->children.push_back(negate(term()));
      } else {
        break;
      }
    }
    return sum->children.size() == 1 ? sum->children[0] : sum;
  }

  NodePtr term() {
    auto product = std::make_shared<Node>();
    product->kind = Node::Kind::kProduct;
    product->children.push_back(factor());
    while (accept('*')) product->children.push_back(factor());
    return product->children.size() == 1 ? product->children[0] : product;
  }

  static NodePtr negate(NodePtr child) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::kNegate;
    n->children.push_back(std::move(child));
    return n;
  }

  NodePtr factor() {
    skip_space();
    if (accept('-')) return negate(factor());
    if (accept('(')) {
      NodePtr inner = expression();
      expect(')');
      return inner;
    }
    if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      auto n = std::make_shared<Node>();
      n->value = number();
      return n;
    }
    const std::string name = identifier();
    if (name.empty()) fail("expected a number, '(' or a function name");
    expect('(');
    auto n = std::make_shared<Node>();
    if (name == "indicator") {
      n->kind = Node::Kind::kIndicator;
      n->t = time_argument();
      expect(',');
      n->compare = comparator();
      n->value = signed_number();
    } else if (name == "call" || name == "put" || name == "abs") {
      n->kind = name == "call" ? Node::Kind::kCall : (name == "put" ? Node::Kind::kPut : Node::Kind::kAbs);
      n->t = time_argument();
      expect(',');
      skip_space();
      if (text_.substr(pos_, 2) == "b=") pos_ += 2;
      n->value = signed_number();
    } else if (name == "x") {
      n->kind = Node::Kind::kCoordinate;
      n->t = time_argument();
    } else if (name == "tanh_sm") {
      n->kind = Node::Kind::kTanhSm;
      n->t = time_argument();
    } else {
      fail("unknown function '" + name + "'");
    }
    expect(')');
    return n;
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t time_argument() {
    skip_space();
    if (text_.substr(pos_, 2) == "t=") pos_ += 2;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a time index");
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }

  Node::Compare comparator() {
    skip_space();
    auto take = [&](std::string_view op) {
      if (text_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        return true;
      }
      return false;
    };
    if (take("<=")) return Node::Compare::kLe;
    if (take(">=")) return Node::Compare::kGe;
    if (take("==")) return Node::Compare::kEq;
    if (take("<")) return Node::Compare::kLt;
    if (take(">")) return Node::Compare::kGt;
    fail("expected a comparison (<=, <, >=, >, ==)");
  }

  Rational signed_number() {
    skip_space();
    const bool negative = accept('-');
    Rational v = number();
    return negative ? -v : v;
  }

  Rational number() {
    skip_space();
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    } else if (pos_ + 1 < text_.size() && text_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      digits();
    }
    if (start == pos_) fail("expected a number");
    try {
      return Rational::parse(text_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      fail(e.what());
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Reward::Reward() {
  auto zero = std::make_shared<Node>();
  root_ = zero;
  text_ = "0";
}

Reward Reward::parse(std::string_view text) {
  Reward r;
  r.root_ = Parser(text).parse();
  r.text_ = std::string(text);
  r.max_time_ = r.root_->max_time();
  return r;
}

Reward Reward::exact(std::string name, ExactFn fn, std::size_t max_time) {
  Reward r;
  r.root_.reset();
  r.exact_ = std::move(fn);
  r.text_ = std::move(name);
  r.max_time_ = max_time;
  return r;
}

Reward Reward::approximate(std::string name, FloatFn fn, std::size_t max_time) {
  Reward r;
  r.root_.reset();
  r.float_ = std::move(fn);
  r.text_ = std::move(name);
  r.max_time_ = max_time;
  return r;
}

bool Reward::is_exact() const { return root_ ? root_->exact() : static_cast<bool>(exact_); }

Rational Reward::exact_value(std::span<const Rational> path) const {
  if (path.size() <= max_time_) throw std::invalid_argument("Reward: path shorter than the referenced time");
  if (root_) return root_->eval(path);
  if (!exact_) throw std::logic_error("Reward '" + text_ + "' has no exact value");
  return exact_(path);
}

double Reward::float_value(std::span<const Rational> path) const {
  if (path.size() <= max_time_) throw std::invalid_argument("Reward: path shorter than the referenced time");
  if (root_) return root_->eval_float(path);
  if (float_) return float_(path);
  return exact_(path).to_double();
}

Reward prefix_call_reward(const Rational& a, std::size_t t, const Rational& b) {
  return Reward::parse("indicator(t=0, <=" + a.str() + ") * -call(" + std::to_string(t) + ", " + b.str() + ")");
}

}  // namespace mmot
