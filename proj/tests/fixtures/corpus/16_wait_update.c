double reduce_sum(const double *v, int n);

void sync_all(double *v, int n) {
  #pragma acc update self(v[0:n])
  reduce_sum(v, n);
  #pragma acc wait
}
