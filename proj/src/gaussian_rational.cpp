#include "ppmc/gaussian_rational.hpp"

#include <stdexcept>
#include <vector>

namespace ppmc {

namespace {
const std::string kImagSuffix = "\xC2\xB7i";  // "·i"
}

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    canonicalize();
}

void GaussianRational::canonicalize() {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    const mpq_class d = o.norm();
    if (sgn(d) == 0) throw std::domain_error("GaussianRational: division by zero");
    *this *= o.conj();
    re_ /= d;
    im_ /= d;
    return *this;
}

std::string GaussianRational::toString() const {
    std::string out = rationalString(re_);
    if (sgn(im_) < 0) {
        out += "-" + rationalString(-im_);
    } else {
        out += "+" + rationalString(im_);
    }
    return out + kImagSuffix;
}

GaussianRational GaussianRational::parse(const std::string& text) {
    if (text.size() < kImagSuffix.size() ||
        text.compare(text.size() - kImagSuffix.size(), kImagSuffix.size(), kImagSuffix) != 0) {
        return {parseRational(text), mpq_class(0)};
    }
    const std::string body = text.substr(0, text.size() - kImagSuffix.size());
    // The separator is the last sign that is not the leading one.
    const auto pos = body.find_last_of("+-");
    if (pos == std::string::npos || pos == 0) throw std::invalid_argument("malformed Gaussian rational: " + text);
    mpq_class re = parseRational(body.substr(0, pos));
    mpq_class im = parseRational(body.substr(pos + 1));
    if (body[pos] == '-') im = -im;
    return {re, im};
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.toString(); }

mpq_class factorial(unsigned n) {
    thread_local std::vector<mpz_class> local{mpz_class(1)};
    while (local.size() <= n) local.push_back(local.back() * static_cast<unsigned long>(local.size()));
    return mpq_class(local[n]);
}

std::string rationalString(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parseRational(const std::string& text) {
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational: " + text);
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

}  // namespace ppmc
