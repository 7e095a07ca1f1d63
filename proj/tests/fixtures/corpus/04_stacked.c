void saxpy(float *y, const float *x, float a, int n) {
  #pragma acc data present(x[0:n], y[0:n])
  #pragma acc parallel loop
  for (int i = 0; i < n; ++i) {
    y[i] = a * x[i] + y[i];
  }
}
