#pragma once

// Arithmetic expression language used for kernel definitions and CLI data:
//   numbers, variables, pi, e, + - * / ^ (right-associative), unary minus,
//   parentheses, and the functions
//   sin cos tan exp log sqrt abs sign sinh cosh tanh atan step min max.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <initializer_list>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "summa/errors.hpp"

namespace summa {

class Expression {
public:
    Expression() = default;

    static Expression parse(std::string_view src, std::vector<std::string> variables = {"x"}) {
        if (variables.size() > max_variables) throw ParseError("too many variables");
        Parser p{src, variables};
        auto prog = std::make_shared<Program>();
        p.out = prog.get();
        p.parse_expr();
        p.skip_ws();
        if (p.pos != src.size()) p.fail("unexpected '" + std::string(1, src[p.pos]) + "'");
        prog->source = std::string(src);
        prog->variables = std::move(variables);
        int depth = 0;
        for (const auto& op : prog->ops) {
            depth += stack_effect(op.code);
            prog->max_stack = std::max(prog->max_stack, depth);
        }
        Expression e;
        e.prog_ = std::move(prog);
        return e;
    }

    bool empty() const { return !prog_; }
    const std::string& source() const { return prog_->source; }
    const std::vector<std::string>& variables() const { return prog_->variables; }

    double eval(const double* vars) const {
        if (!prog_) return 0;
        std::array<double, 64> fixed{};
        std::vector<double> heap;
        double* st = fixed.data();
        if (prog_->max_stack > static_cast<int>(fixed.size())) {
            heap.resize(prog_->max_stack);
            st = heap.data();
        }
        int sp = 0;
        for (const auto& op : prog_->ops) {
            switch (op.code) {
                case Code::Const: st[sp++] = op.value; break;
                case Code::Var: st[sp++] = vars[op.index]; break;
                case Code::Neg: st[sp - 1] = -st[sp - 1]; break;
                case Code::Add: --sp; st[sp - 1] += st[sp]; break;
                case Code::Sub: --sp; st[sp - 1] -= st[sp]; break;
                case Code::Mul: --sp; st[sp - 1] *= st[sp]; break;
                case Code::Div: --sp; st[sp - 1] /= st[sp]; break;
                case Code::Pow: --sp; st[sp - 1] = std::pow(st[sp - 1], st[sp]); break;
                case Code::Call1: st[sp - 1] = apply1(op.index, st[sp - 1]); break;
                case Code::Call2: --sp; st[sp - 1] = apply2(op.index, st[sp - 1], st[sp]); break;
            }
        }
        return st[0];
    }

    // Missing trailing variables read as zero.
    double operator()(std::initializer_list<double> v) const {
        std::array<double, max_variables> buf{};
        std::copy_n(v.begin(), std::min(v.size(), buf.size()), buf.begin());
        return eval(buf.data());
    }
    double operator()(double x) const { return (*this)({x}); }
    double operator()(double x, double y) const { return (*this)({x, y}); }
    double operator()(double x, double y, double t) const { return (*this)({x, y, t}); }

    static constexpr std::size_t max_variables = 8;

private:
    enum class Code { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call1, Call2 };
    struct Op {
        Code code;
        double value = 0;
        int index = 0;
    };
    struct Program {
        std::vector<Op> ops;
        std::string source;
        std::vector<std::string> variables;
        int max_stack = 1;
    };

    static int stack_effect(Code c) {
        switch (c) {
            case Code::Const:
            case Code::Var: return 1;
            case Code::Neg:
            case Code::Call1: return 0;
            default: return -1;
        }
    }

    static constexpr std::array<std::string_view, 12> unary_names = {
        "sin", "cos", "tan", "exp", "log", "sqrt", "abs", "sign", "sinh", "cosh", "tanh", "atan"};
    static constexpr std::array<std::string_view, 2> binary_names = {"min", "max"};

    static double apply1(int f, double v) {
        switch (f) {
            case 0: return std::sin(v);
            case 1: return std::cos(v);
            case 2: return std::tan(v);
            case 3: return std::exp(v);
            case 4: return std::log(v);
            case 5: return std::sqrt(v);
            case 6: return std::abs(v);
            case 7: return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0);
            case 8: return std::sinh(v);
            case 9: return std::cosh(v);
            case 10: return std::tanh(v);
            case 11: return std::atan(v);
            case 12: return v > 0 ? 1.0 : (v < 0 ? 0.0 : 0.5);  // step with one argument
        }
        return 0;
    }
    static double apply2(int f, double a, double b) {
        switch (f) {
            case 0: return std::min(a, b);
            case 1: return std::max(a, b);
        }
        return 0;
    }

    struct Parser {
        std::string_view src;
        const std::vector<std::string>& vars;
        Program* out = nullptr;
        std::size_t pos = 0;

        [[noreturn]] void fail(const std::string& msg) const {
            throw ParseError("expression \"" + std::string(src) + "\" at " + std::to_string(pos) + ": " + msg);
        }
        void skip_ws() {
            while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
        }
        bool accept(char c) {
            skip_ws();
            if (pos < src.size() && src[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        void emit(Code c, double v = 0, int i = 0) { out->ops.push_back({c, v, i}); }

        void parse_expr() {
            parse_term();
            for (;;) {
                if (accept('+')) {
                    parse_term();
                    emit(Code::Add);
                } else if (accept('-')) {
                    parse_term();
                    emit(Code::Sub);
                } else {
                    return;
                }
            }
        }
        void parse_term() {
            parse_unary();
            for (;;) {
                if (accept('*')) {
                    parse_unary();
                    emit(Code::Mul);
                } else if (accept('/')) {
                    parse_unary();
                    emit(Code::Div);
                } else {
                    return;
                }
            }
        }
        void parse_unary() {
            if (accept('-')) {
                parse_unary();
                emit(Code::Neg);
            } else if (accept('+')) {
                parse_unary();
            } else {
                parse_power();
            }
        }
        void parse_power() {
            parse_primary();
            if (accept('^')) {
                parse_unary();
                emit(Code::Pow);
            }
        }
        void parse_primary() {
            skip_ws();
            if (pos >= src.size()) fail("unexpected end of input");
            const char c = src[pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                const std::string rest(src.substr(pos));
                char* end = nullptr;
                const double v = std::strtod(rest.c_str(), &end);
                if (end == rest.c_str()) fail("bad number");
                pos += static_cast<std::size_t>(end - rest.c_str());
                emit(Code::Const, v);
                return;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                const std::size_t start = pos;
                while (pos < src.size() &&
                       (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                    ++pos;
                const std::string_view name = src.substr(start, pos - start);
                if (accept('(')) {
                    parse_call(name);
                    return;
                }
                for (std::size_t i = 0; i < vars.size(); ++i)
                    if (vars[i] == name) {
                        emit(Code::Var, 0, static_cast<int>(i));
                        return;
                    }
                if (name == "pi") return emit(Code::Const, std::numbers::pi);
                if (name == "e") return emit(Code::Const, std::numbers::e);
                pos = start;
                fail("unknown identifier '" + std::string(name) + "'");
            }
            if (accept('(')) {
                parse_expr();
                if (!accept(')')) fail("expected ')'");
                return;
            }
            fail("unexpected '" + std::string(1, c) + "'");
        }
        void parse_call(std::string_view name) {
            int nargs = 0;
            if (!accept(')')) {
                do {
                    parse_expr();
                    ++nargs;
                } while (accept(','));
                if (!accept(')')) fail("expected ')'");
            }
            for (std::size_t i = 0; i < unary_names.size(); ++i)
                if (unary_names[i] == name) {
                    if (nargs != 1) fail(std::string(name) + " takes one argument");
                    return emit(Code::Call1, 0, static_cast<int>(i));
                }
            if (name == "step") {
                if (nargs != 1) fail("step takes one argument");
                return emit(Code::Call1, 0, 12);
            }
            for (std::size_t i = 0; i < binary_names.size(); ++i)
                if (binary_names[i] == name) {
                    if (nargs != 2) fail(std::string(name) + " takes two arguments");
                    return emit(Code::Call2, 0, static_cast<int>(i));
                }
            fail("unknown function '" + std::string(name) + "'");
        }
    };

    std::shared_ptr<const Program> prog_;
};

}  // namespace summa
