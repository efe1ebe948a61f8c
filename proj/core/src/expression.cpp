#include "levyx/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "levyx/error.hpp"

namespace levyx {

struct Expression::Node {
    enum class Op { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Log, Sqrt, Sin, Cos, Abs };
    Op op = Op::Number;
    double number = 0.0;
    std::size_t var = 0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;
using Op = Node::Op;

bool is_constant_node(const NodePtr& n) { return n->op == Op::Number; }

template <class V>
V eval_node(const Node& n, const std::vector<V>& env) {
    using std::abs;
    using std::cos;
    using std::exp;
    using std::log;
    using std::pow;
    using std::sin;
    using std::sqrt;
    switch (n.op) {
        case Op::Number:
            if constexpr (std::is_same_v<V, double>) {
                return n.number;
            } else {
                return V::constant(n.number, env.front().order());
            }
        case Op::Var: return env[n.var];
        case Op::Neg: return -eval_node(*n.lhs, env);
        case Op::Add: return eval_node(*n.lhs, env) + eval_node(*n.rhs, env);
        case Op::Sub: return eval_node(*n.lhs, env) - eval_node(*n.rhs, env);
        case Op::Mul: return eval_node(*n.lhs, env) * eval_node(*n.rhs, env);
        case Op::Div: return eval_node(*n.lhs, env) / eval_node(*n.rhs, env);
        case Op::Pow:
            if (is_constant_node(n.rhs)) {
                const double p = n.rhs->number;
                if constexpr (std::is_same_v<V, double>) {
                    return pow(eval_node(*n.lhs, env), p);
                } else {
                    // integer powers stay exact at a zero base
                    if (p == std::floor(p) && p >= 0 && p <= 32) {
                        V base = eval_node(*n.lhs, env);
                        V acc = V::constant(1.0, base.order());
                        for (int i = 0; i < static_cast<int>(p); ++i) acc = acc * base;
                        return acc;
                    }
                    return pow(eval_node(*n.lhs, env), p);
                }
            }
            return exp(eval_node(*n.rhs, env) * log(eval_node(*n.lhs, env)));
        case Op::Exp: return exp(eval_node(*n.lhs, env));
        case Op::Log: return log(eval_node(*n.lhs, env));
        case Op::Sqrt: return sqrt(eval_node(*n.lhs, env));
        case Op::Sin: return sin(eval_node(*n.lhs, env));
        case Op::Cos: return cos(eval_node(*n.lhs, env));
        case Op::Abs:
            if constexpr (std::is_same_v<V, double>) {
                return abs(eval_node(*n.lhs, env));
            } else {
                V v = eval_node(*n.lhs, env);
                return v.value() < 0 ? -v : v;
            }
    }
    fail(ErrorKind::Numeric, "corrupt expression node");
}

NodePtr make(Op op, NodePtr lhs, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    // fold constant subtrees
    if (n->lhs && is_constant_node(n->lhs) && (!n->rhs || is_constant_node(n->rhs))) {
        const double v = eval_node<double>(*n, {});
        auto c = std::make_shared<Node>();
        c->op = Op::Number;
        c->number = v;
        return c;
    }
    return n;
}

NodePtr number(double v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Number;
    n->number = v;
    return n;
}

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars,
           const std::map<std::string, double>& params)
        : s_(text), vars_(vars), params_(params) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void error(const std::string& msg) const {
        fail(ErrorKind::Config,
             "expression '" + s_ + "': " + msg + " at offset " + std::to_string(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) lhs = make(Op::Add, lhs, term());
            else if (accept('-')) lhs = make(Op::Sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make(Op::Mul, lhs, unary());
            else if (accept('/')) lhs = make(Op::Div, lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Op::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make(Op::Pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) error("unexpected end of input");
        const char c = s_[pos_];
        if (accept('(')) {
            NodePtr e = expr();
            if (!accept(')')) error("missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) error("bad number");
            pos_ += static_cast<std::size_t>(end - begin);
            return number(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string id = s_.substr(start, pos_ - start);
            if (accept('(')) return call(id);
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                if (vars_[i] == id) {
                    auto n = std::make_shared<Node>();
                    n->op = Op::Var;
                    n->var = i;
                    return n;
                }
            }
            if (auto it = params_.find(id); it != params_.end()) return number(it->second);
            if (id == "pi") return number(std::numbers::pi);
            if (id == "e") return number(std::numbers::e);
            error("unknown identifier '" + id + "'");
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr call(const std::string& fn) {
        NodePtr a = expr();
        if (fn == "pow") {
            if (!accept(',')) error("pow expects two arguments");
            NodePtr b = expr();
            if (!accept(')')) error("missing ')'");
            return make(Op::Pow, a, b);
        }
        if (!accept(')')) error("missing ')'");
        if (fn == "exp") return make(Op::Exp, a);
        if (fn == "log") return make(Op::Log, a);
        if (fn == "sqrt") return make(Op::Sqrt, a);
        if (fn == "sin") return make(Op::Sin, a);
        if (fn == "cos") return make(Op::Cos, a);
        if (fn == "abs") return make(Op::Abs, a);
        error("unknown function '" + fn + "'");
    }

    std::string s_;
    std::size_t pos_ = 0;
    const std::vector<std::string>& vars_;
    const std::map<std::string, double>& params_;
};

bool uses_var(const Node& n, std::size_t var) {
    if (n.op == Op::Var) return n.var == var;
    return (n.lhs && uses_var(*n.lhs, var)) || (n.rhs && uses_var(*n.rhs, var));
}

}  // namespace

Expression Expression::parse(const std::string& text, const std::vector<std::string>& variables,
                             const std::map<std::string, double>& params) {
    Expression e;
    e.root_ = Parser(text, variables, params).parse();
    e.variables_ = variables;
    e.text_ = text;
    return e;
}

double Expression::eval(const std::vector<double>& values) const {
    require(root_ != nullptr, ErrorKind::Config, "empty expression");
    return eval_node<double>(*root_, values);
}

RJet Expression::eval_jet(const std::vector<double>& values, std::size_t wrt, int order) const {
    require(root_ != nullptr, ErrorKind::Config, "empty expression");
    std::vector<RJet> env;
    env.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        env.push_back(i == wrt ? RJet::variable(values[i], order) : RJet::constant(values[i], order));
    if (env.empty()) env.push_back(RJet::constant(0.0, order));
    return eval_node<RJet>(*root_, env);
}

bool Expression::depends_on(const std::string& variable) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i] == variable) return root_ && uses_var(*root_, i);
    return false;
}

bool Expression::is_constant() const { return root_ && root_->op == Op::Number; }

}  // namespace levyx
