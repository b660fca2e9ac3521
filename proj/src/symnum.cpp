#include "ariththeta/symnum.hpp"

#include <sstream>

#include "json.hpp"

namespace ariththeta {

using nlohmann::json;

void SymNumber::canonicalize() {
    for (auto it = logs_.begin(); it != logs_.end();)
        it = (it->second == 0) ? logs_.erase(it) : std::next(it);
    for (auto it = opaques_.begin(); it != opaques_.end();)
        it = (it->second == 0) ? opaques_.erase(it) : std::next(it);
}

SymNumber SymNumber::gamma(const Rat& c) {
    SymNumber s;
    s.gamma_ = c;
    return s;
}

SymNumber SymNumber::log_pi(const Rat& c) {
    SymNumber s;
    s.logpi_ = c;
    return s;
}

SymNumber SymNumber::log_prime(long p, const Rat& c) {
    if (!is_prime(p)) throw Error("log_prime: " + std::to_string(p) + " not prime");
    SymNumber s;
    if (c != 0) s.logs_[p] = c;
    return s;
}

SymNumber SymNumber::opaque(const std::string& tag, const Rat& c) {
    SymNumber s;
    if (c != 0) s.opaques_[tag] = c;
    return s;
}

Rat SymNumber::gamma_coeff() const { return gamma_; }
Rat SymNumber::logpi_coeff() const { return logpi_; }

Rat SymNumber::log_coeff(long p) const {
    auto it = logs_.find(p);
    return it == logs_.end() ? Rat(0) : it->second;
}

Rat SymNumber::opaque_coeff(const std::string& tag) const {
    auto it = opaques_.find(tag);
    return it == opaques_.end() ? Rat(0) : it->second;
}

bool SymNumber::is_zero() const {
    return rat_ == 0 && gamma_ == 0 && logpi_ == 0 && logs_.empty() && opaques_.empty();
}

bool SymNumber::is_rational() const {
    return gamma_ == 0 && logpi_ == 0 && logs_.empty() && opaques_.empty();
}

SymNumber SymNumber::operator+(const SymNumber& o) const {
    SymNumber s;
    s.rat_ = rat_ + o.rat_;
    s.gamma_ = gamma_ + o.gamma_;
    s.logpi_ = logpi_ + o.logpi_;
    s.logs_ = logs_;
    for (auto& [p, c] : o.logs_) s.logs_[p] += c;
    s.opaques_ = opaques_;
    for (auto& [t, c] : o.opaques_) s.opaques_[t] += c;
    s.canonicalize();
    return s;
}

SymNumber SymNumber::operator-(const SymNumber& o) const { return *this + (-o); }

SymNumber SymNumber::operator-() const { return scale(Rat(-1)); }

bool SymNumber::operator==(const SymNumber& o) const {
    return rat_ == o.rat_ && gamma_ == o.gamma_ && logpi_ == o.logpi_ && logs_ == o.logs_ &&
           opaques_ == o.opaques_;
}

SymNumber SymNumber::scale(const Rat& q) const {
    SymNumber s;
    if (q == 0) return s;
    s.rat_ = rat_ * q;
    s.gamma_ = gamma_ * q;
    s.logpi_ = logpi_ * q;
    for (auto& [p, c] : logs_) s.logs_[p] = c * q;
    for (auto& [t, c] : opaques_) s.opaques_[t] = c * q;
    return s;
}

SymNumber SymNumber::mul(const SymNumber& o) const {
    if (is_rational()) return o.scale(rat_);
    if (o.is_rational()) return scale(o.rat_);
    throw MixedProduct(to_string() + " * " + o.to_string());
}

SymNumber operator*(const Rat& q, const SymNumber& a) { return a.scale(q); }

SymNumber SymNumber::reduce_mod_logs(const std::set<long>& S) const {
    SymNumber s = *this;
    for (long p : S) s.logs_.erase(p);
    return s;
}

MpFloat SymNumber::shadow(const OpaqueRegistry* reg, long digits) const {
    mpfr_prec_t prec = MpFloat::digits_to_bits(digits);
    MpFloat x = MpFloat::from_rat(rat_, prec);
    if (gamma_ != 0) x += MpFloat::from_rat(gamma_, prec) * MpFloat::euler(prec);
    if (logpi_ != 0) x += MpFloat::from_rat(logpi_, prec) * MpFloat::pi(prec).log();
    for (auto& [p, c] : logs_) x += MpFloat::from_rat(c, prec) * MpFloat::from_long(p, prec).log();
    for (auto& [t, c] : opaques_) {
        if (!reg || !reg->has(t)) throw Error("shadow: opaque tag '" + t + "' has no registered value");
        x += MpFloat::from_rat(c, prec) * reg->value(t);
    }
    return x;
}

std::string SymNumber::to_string() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const Rat& c, const std::string& unit) {
        if (c == 0) return;
        Rat a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (unit.empty())
            os << rat_str(a);
        else if (a == 1)
            os << unit;
        else
            os << rat_str(a) << "*" << unit;
    };
    emit(rat_, "");
    emit(gamma_, "gamma");
    emit(logpi_, "log pi");
    for (auto& [p, c] : logs_) emit(c, "log " + std::to_string(p));
    for (auto& [t, c] : opaques_) emit(c, t);
    if (first) os << "0";
    return os.str();
}

std::string SymNumber::to_json() const {
    json j;
    j["rat"] = rat_str(rat_);
    j["gamma"] = rat_str(gamma_);
    j["logpi"] = rat_str(logpi_);
    json jl = json::object();
    for (auto& [p, c] : logs_) jl[std::to_string(p)] = rat_str(c);
    j["logs"] = jl;
    json jo = json::object();
    for (auto& [t, c] : opaques_) jo[t] = rat_str(c);
    j["opaque"] = jo;
    if (opaques_.empty()) j["approx"] = const_cast<SymNumber*>(this)->shadow(nullptr, 40).to_string(32);
    return j.dump();
}

SymNumber SymNumber::from_json(const std::string& text) {
    json j = json::parse(text);
    SymNumber s;
    s.rat_ = parse_rat(j.at("rat").get<std::string>());
    s.gamma_ = parse_rat(j.at("gamma").get<std::string>());
    s.logpi_ = parse_rat(j.at("logpi").get<std::string>());
    for (auto& [k, v] : j.at("logs").items()) s.logs_[std::stol(k)] = parse_rat(v.get<std::string>());
    for (auto& [k, v] : j.at("opaque").items()) s.opaques_[k] = parse_rat(v.get<std::string>());
    s.canonicalize();
    return s;
}

SymNumber log_of_rational(const Rat& r) {
    if (r <= 0) throw NonPositive("log_of_rational(" + rat_str(r) + ")");
    SymNumber s;
    if (r == 1) return s;
    for (auto& [p, e] : factor_rational(r)) s = s + SymNumber::log_prime(p, Rat(e));
    return s;
}

SymNumber psi_integer(long m) {
    if (m < 1) throw NonPositive("psi_integer");
    return SymNumber::gamma(Rat(-1)) + SymNumber(harmonic(m - 1));
}

void OpaqueRegistry::register_value(const std::string& tag, const MpFloat& value) {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = values_.find(tag);
    if (it != values_.end()) {
        if (mpfr_cmp(it->second.raw(), value.raw()) != 0)
            throw Error("opaque tag '" + tag + "' registered twice with different values");
        return;
    }
    values_.emplace(tag, value);
}

bool OpaqueRegistry::has(const std::string& tag) const {
    std::lock_guard<std::mutex> lk(mu_);
    return values_.count(tag) > 0;
}

MpFloat OpaqueRegistry::value(const std::string& tag) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = values_.find(tag);
    if (it == values_.end()) throw Error("opaque tag '" + tag + "' not registered");
    return it->second;
}

}  // namespace ariththeta
