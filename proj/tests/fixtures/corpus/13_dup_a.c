void scale_a(double *data, int n) {
  #pragma acc parallel loop copyin(data[0:n])
  for (int i = 0; i < n; ++i) {
    data[i] = data[i] * 2.0;
  }
}
