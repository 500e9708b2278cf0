#pragma once

#include <stdexcept>
#include <string>

namespace aspcomp {

/// Base class for all competition-harness errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input file is not well-formed. Carries 1-based line/column where known.
class ParseError : public Error {
public:
    ParseError(std::string file, int line, int column, const std::string& message)
        : Error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          file(std::move(file)), line(line), column(column) {}
    std::string file;
    int line;
    int column;
};

class DanglingReference : public Error {
public:
    explicit DanglingReference(std::string id)
        : Error("dangling reference: " + id), id(std::move(id)) {}
    std::string id;
};

class DuplicateId : public Error {
public:
    explicit DuplicateId(std::string id) : Error("duplicate identifier: " + id), id(std::move(id)) {}
    std::string id;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

/// ASP source text rejected by the lexer/parser.
class SyntaxError : public Error {
public:
    SyntaxError(int line, int column, std::string expected, const std::string& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line(line), column(column), expected(std::move(expected)) {}
    int line;
    int column;
    std::string expected; // comma-separated expected-token set
};

class UnsafeRule : public Error {
public:
    UnsafeRule(std::string rule, std::string variable)
        : Error("unsafe rule (variable " + variable + " not bound by a positive body literal): " + rule),
          rule(std::move(rule)), variable(std::move(variable)) {}
    std::string rule;
    std::string variable;
};

class GroundingBlowup : public Error {
public:
    explicit GroundingBlowup(unsigned long long count)
        : Error("grounding exceeds instance cap (" + std::to_string(count) + " instances)"), count(count) {}
    unsigned long long count;
};

class HcfUndecided : public Error {
public:
    explicit HcfUndecided(const std::string& why) : Error("head-cycle-freeness undecided: " + why) {}
};

class MissingData : public Error {
public:
    explicit MissingData(const std::string& what) : Error(what) {}
};

class NoNonemptyClass : public Error {
public:
    NoNonemptyClass() : Error("all classes empty: target would divide by zero") {}
};

class PoolTooSmall : public Error {
public:
    explicit PoolTooSmall(std::string domain)
        : Error("insufficient number of instances in domain: " + domain), domain(std::move(domain)) {}
    std::string domain;
};

class KTooLarge : public Error {
public:
    KTooLarge(std::size_t k, std::size_t n)
        : Error("cannot pick " + std::to_string(k) + " from " + std::to_string(n) + " ids") {}
};

/// Oracle input exceeds the brute-force atom cap.
class TooLarge : public Error {
public:
    TooLarge(std::size_t atoms, std::size_t cap)
        : Error("ground program has " + std::to_string(atoms) + " undetermined atoms, oracle cap is " +
                std::to_string(cap)) {}
};

class UnsupportedConstruct : public Error {
public:
    explicit UnsupportedConstruct(const std::string& what) : Error("unsupported construct: " + what) {}
};

/// One system proved unsatisfiability while another presented a verified solution.
class InconsistentClaims : public Error {
public:
    InconsistentClaims(std::string domain, std::string instance)
        : Error("inconsistent claims on " + domain + "/" + instance + ": verified solution vs. unsat report"),
          domain(std::move(domain)), instance(std::move(instance)) {}
    std::string domain;
    std::string instance;
};

class EmptyScope : public Error {
public:
    explicit EmptyScope(const std::string& what) : Error("empty report scope: " + what) {}
};

} // namespace aspcomp
