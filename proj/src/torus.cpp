namespace flux::detail {
int placeholder_torus = 0;
}
