void halve(double *v, int n) {
  #pragma acc loop
  for (int i = 0; i < n; ++i)
    v[i] *= 0.5;
}
