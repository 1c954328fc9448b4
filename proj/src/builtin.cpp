#include "phasekit/builtin.hpp"

#include <map>

namespace phasekit {

namespace {

const std::map<std::string, std::string>& texts() {
  static const std::map<std::string, std::string> t{
      {"lorenz", R"sys(# Lorenz system with damping parameter epsilon
system lorenz
params sigma epsilon b
vars x y z
dx/dt = y - sigma*epsilon*x
dy/dt = -x*z + x - epsilon*y
dz/dt = x*y - epsilon*b*z
)sys"},
      {"system21", R"sys(# (sigma, epsilon, b) = (1/3, epsilon, 0)
system system21
params epsilon
vars x y z
dx/dt = y - epsilon/3*x
dy/dt = -x*z + x - epsilon*y
dz/dt = x*y
)sys"},
      {"m21", R"sys(# four-parameter modification of system21
system m21
params alpha1 alpha2 alpha3 epsilon
vars x y z
dx/dt = -epsilon/3*x + y + (8*(9*alpha1 - epsilon*alpha3) + i*(24*alpha2 + alpha3^2 - 16*epsilon^2))/72
dy/dt = -x*z - (24*alpha2 + alpha3^2 - 8*epsilon^2)/72*x - epsilon*y + (alpha3 - 4*i*epsilon)/6*z
        + (24*alpha2*alpha3 + alpha3^3 - 432*alpha1*epsilon + 64*alpha3*epsilon^2
           - 2*i*epsilon*(120*alpha2 + 5*alpha3^2 - 16*epsilon^2))/432
dz/dt = x*y + (12*(6*alpha1 - epsilon*alpha3) + i*(24*alpha2 + alpha3^2))/72*x - (alpha3 - 4*i*epsilon)/6*y
        - (alpha3 - 4*i*epsilon)*(12*(6*alpha1 - alpha3*epsilon) + i*(24*alpha2 + alpha3^2))/432
)sys"},
      {"system31", R"sys(# (sigma, epsilon, b) = (2, 0, 1)
system system31
vars x y z
dx/dt = y
dy/dt = -x*z + x
dz/dt = x*y
integral I = x^2 - 2*z
)sys"},
      {"system41", R"sys(# (sigma, epsilon, b) = (1, 3, 2)
system system41
vars x y z
exp E rate 6
dx/dt = y - 3*x
dy/dt = -x*z + x - 3*y
dz/dt = x*y - 6*z
integral I = E*(x^2 - 2*z)
)sys"},
      {"system51", R"sys(# (sigma, epsilon, b) = (1, -3, 2)
system system51
vars x y z
exp E rate -6
dx/dt = y + 3*x
dy/dt = -x*z + x + 3*y
dz/dt = x*y + 6*z
integral I = E*(x^2 - 2*z)
)sys"},
      {"xy41", R"sys(# quadratic (X, Y) form of the reduced system41; E stands for exp(-6t)
system xy41
params I
vars x y
exp E rate -6
dx/dt = x^2 - x*y - 2*x
dy/dt = y^2 - 3*x*y - 2*y - I/2*E
chart C1: x1 = 1/x, y1 = ((y*x + I/4*E)*x + I/2*E)*x,
          x = 1/x1, y = ((y1*x1 - I/2*E)*x1 - I/4*E)*x1
chart C2: x2 = 1/x, y2 = (((y - 2*x)*x - I/4*E)*x + I/2*E)*x,
          x = 1/x2, y = ((y2*x2 - I/2*E)*x2 + I/4*E)*x2 + 2/x2
chart C3: x3 = x*y, y3 = 1/y,
          x = x3*y3, y = 1/y3
)sys"},
  };
  return t;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"lorenz", "system21", "m21", "system31", "system41", "system51", "xy41"};
}

const std::string& builtin_text(const std::string& name) { return texts().at(name); }

SystemDoc builtin_system(const std::string& name) { return parse_system(builtin_text(name)); }

}  // namespace phasekit
