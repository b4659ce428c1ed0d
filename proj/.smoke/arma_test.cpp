#include <armadillo>
#include <iostream>
int main() {
  arma::cx_mat A(3, 3, arma::fill::randn);
  arma::cx_mat H = A * A.t();  // Hermitian PSD
  arma::vec ev;
  arma::cx_mat V;
  arma::eig_sym(ev, V, H);
  arma::cx_mat Lw = arma::chol(H + 3.0*arma::eye<arma::cx_mat>(3,3), "lower");
  arma::vec s = arma::svd(A);
  auto ld = arma::log_det_sympd(H + arma::eye<arma::cx_mat>(3,3));
  std::cout << ev.t() << s.t() << ld << "\n" << arma::arma_version::as_string() << "\n";
  return 0;
}
