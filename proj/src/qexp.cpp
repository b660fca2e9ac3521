#include "ariththeta/qexp.hpp"

#include "json.hpp"

namespace ariththeta {

using nlohmann::json;

void QExpansion::set(const Rat& t, const SymNumber& c) {
    if (t < 0 || t > prec_) throw Error("q-expansion index out of range");
    if (c.is_zero())
        coeffs_.erase(t);
    else
        coeffs_[t] = c;
}

void QExpansion::add_to(const Rat& t, const SymNumber& c) { set(t, coeff(t) + c); }

SymNumber QExpansion::coeff(const Rat& t) const {
    auto it = coeffs_.find(t);
    return it == coeffs_.end() ? SymNumber() : it->second;
}

long QExpansion::nonzero_count() const {
    long n = 0;
    for (auto& [t, c] : coeffs_)
        if (!c.is_zero()) ++n;
    return n;
}

QExpansion QExpansion::operator+(const QExpansion& o) const {
    QExpansion r(std::min(prec_, o.prec_));
    r.meta_ = meta_;
    for (auto& [t, c] : coeffs_)
        if (t <= r.prec_) r.add_to(t, c);
    for (auto& [t, c] : o.coeffs_)
        if (t <= r.prec_) r.add_to(t, c);
    return r;
}

QExpansion QExpansion::cauchy_mul(const QExpansion& o) const {
    QExpansion r(std::min(prec_, o.prec_));
    r.meta_ = meta_;
    r.meta_.weight = meta_.weight + o.meta_.weight;
    for (auto& [t1, c1] : coeffs_) {
        if (t1 > r.prec_) break;
        for (auto& [t2, c2] : o.coeffs_) {
            Rat t = t1 + t2;
            if (t > r.prec_) break;
            r.add_to(t, c1.mul(c2));
        }
    }
    return r;
}

QExpansion QExpansion::scale(const Rat& q) const {
    QExpansion r(prec_);
    r.meta_ = meta_;
    for (auto& [t, c] : coeffs_) r.set(t, c.scale(q));
    return r;
}

bool QExpansion::same_coeffs(const QExpansion& o) const {
    Rat bound = std::min(prec_, o.prec_);
    for (auto& [t, c] : coeffs_)
        if (t <= bound && !(c == o.coeff(t))) return false;
    for (auto& [t, c] : o.coeffs_)
        if (t <= bound && !(c == coeff(t))) return false;
    return true;
}

std::string QExpansion::to_json() const {
    json j;
    j["prec"] = rat_str(prec_);
    json meta;
    meta["weight"] = meta_.weight;
    meta["disc"] = meta_.disc;
    meta["normalization"] = meta_.normalization;
    meta["incoherent"] = meta_.incoherent;
    j["meta"] = meta;
    json arr = json::array();
    for (auto& [t, c] : coeffs_) arr.push_back({rat_str(t), json::parse(c.to_json())});
    j["coeffs"] = arr;
    return j.dump();
}

QExpansion QExpansion::from_json(const std::string& text) {
    json j = json::parse(text);
    QExpansion q(parse_rat(j.at("prec").get<std::string>()));
    q.meta_.weight = j.at("meta").at("weight").get<long>();
    q.meta_.disc = j.at("meta").at("disc").get<long>();
    q.meta_.normalization = j.at("meta").at("normalization").get<std::string>();
    q.meta_.incoherent = j.at("meta").at("incoherent").get<bool>();
    for (auto& item : j.at("coeffs"))
        q.set(parse_rat(item[0].get<std::string>()), SymNumber::from_json(item[1].dump()));
    return q;
}

}  // namespace ariththeta
