#ifndef ARITHTHETA_CMFIELD_HPP
#define ARITHTHETA_CMFIELD_HPP

#include <string>
#include <vector>

#include "ariththeta/mpfloat.hpp"
#include "ariththeta/ratutil.hpp"

namespace ariththeta {

enum class PlaceKind { split, inert, ramified };

struct PlaceType {
    long p = 0;
    PlaceKind kind = PlaceKind::split;
};

// Primitive reduced positive-definite binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
    long a = 1, b = 0, c = 1;
    long disc() const { return b * b - 4 * a * c; }
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

// Imaginary quadratic field Q(sqrt(d)) for a negative fundamental discriminant d,
// with its form class group as the stand-in for rank-1 unitary class sets.
class CMField {
  public:
    explicit CMField(long d);

    long d() const { return d_; }
    long unit_order() const { return w_; }               // |O_E^x|: 6, 4 or 2
    long class_number() const { return static_cast<long>(class_reps_.size()); }
    const std::vector<QuadForm>& class_reps() const { return class_reps_; }

    // Principal form of discriminant d (the norm form of O_E on the basis 1, omega).
    QuadForm principal_form() const;

    // Subset of class_reps in the principal genus: the orbit of the trivial
    // class under squaring, i.e. the classes reached by the rank-1 unitary
    // group's adelic action.  Detected through genus characters.
    std::vector<QuadForm> principal_genus_reps() const;

    PlaceType splitting_type(long p) const;

    std::string to_csv_row() const;

  private:
    long d_;
    long w_;
    std::vector<QuadForm> class_reps_;
};

bool is_fundamental_discriminant(long d);

// #{(x,y) in Z^2 : a x^2 + b xy + c y^2 = t}, bounded enumeration.
long form_representation_count(const QuadForm& f, const Rat& t);

enum class LOrder { value0, deriv0 };

// L(0, eta) or L'(0, eta) for the quadratic character eta attached to d.
// value0 is exact (returned to full precision); deriv0 is computed from the
// Hurwitz-zeta representation, evaluated at two working precisions which must
// agree to ~10^-(digits-8), else PrecisionUnreachable.
MpFloat dirichlet_L(long d, LOrder order, long digits = 64);

// Exact rational L(0, eta) = -(1/|d|) sum_a a*eta(a).
Rat dirichlet_L0_exact(long d);

// CSV dataset support (columns: d, h, w, "a:b:c;a:b:c;...").
std::string discriminant_table_csv(long max_abs_d);
struct DiscRow {
    long d, h, w;
    std::vector<QuadForm> forms;
};
std::vector<DiscRow> load_discriminant_csv(const std::string& path);

}  // namespace ariththeta

#endif
